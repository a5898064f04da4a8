#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(k) = fewbody::io::parse_kernel(text) {
        assert!(k.grid().windows(2).all(|w| w[0] < w[1]));
        for &r in k.grid() {
            assert!(k.eval(r).is_finite());
            assert!(k.eval(-r).is_finite());
        }
    }
});
