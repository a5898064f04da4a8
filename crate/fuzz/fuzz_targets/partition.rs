#![no_main]

use fewbody::symgroup::Partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = Partition::parse(text) {
        assert_eq!(Partition::parse(&p.to_string()).unwrap(), p);
        assert_eq!(p.conjugate().conjugate(), p);
        if p.n() <= 12 {
            let _ = p.dimension();
        }
    }
});
