#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw_core::Scene;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = Scene::from_json(s);
    }
});
