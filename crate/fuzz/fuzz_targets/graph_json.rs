#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw_core::geom::io::{graph_from_json, graph_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = graph_from_json(s) {
            let again = graph_from_json(&graph_to_json(&g)).unwrap();
            assert_eq!(again.edges(), g.edges());
        }
    }
});
