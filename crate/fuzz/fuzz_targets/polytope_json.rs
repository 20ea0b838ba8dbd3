#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw_core::geom::io::{polytope_from_json, polytope_to_json};

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = polytope_from_json(s) {
            let again = polytope_from_json(&polytope_to_json(&p)).unwrap();
            assert_eq!(again.vertices(), p.vertices());
        }
    }
});
