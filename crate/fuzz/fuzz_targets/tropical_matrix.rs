#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw_core::tropical::TropicalMatrix;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = TropicalMatrix::parse(s) {
            assert_eq!(TropicalMatrix::parse(&c.to_csv()).unwrap(), c);
        }
    }
});
