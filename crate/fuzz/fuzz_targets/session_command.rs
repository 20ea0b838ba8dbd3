#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw_core::scene::Command;

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<Command>(data) {
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Command>(&text).unwrap(), c);
    }
});
