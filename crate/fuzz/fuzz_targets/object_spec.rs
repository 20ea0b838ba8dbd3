#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw::object::family;

fuzz_target!(|data: &[u8]| {
    if data.len() > 64 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = family(s);
    }
});
