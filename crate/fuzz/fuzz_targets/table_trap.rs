#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = fewbody::io::parse_table_trap(text) {
        let len = s.len().unwrap();
        assert!(len > 0);
        for n in 1..len {
            assert!(s.energy(n) >= s.energy(n - 1));
        }
    }
});
