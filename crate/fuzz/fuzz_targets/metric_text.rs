#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw_core::tightspan::Metric;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = Metric::parse(s) {
            assert_eq!(Metric::parse(&m.to_text()).unwrap(), m);
        }
    }
});
