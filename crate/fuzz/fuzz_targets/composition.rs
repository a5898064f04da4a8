#![no_main]

use fewbody::spectra::Composition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Composition::parse(text) {
        assert_eq!(Composition::parse(&c.to_string()).unwrap(), c);
        assert_eq!(c.shape().n(), c.n());
    }
});
