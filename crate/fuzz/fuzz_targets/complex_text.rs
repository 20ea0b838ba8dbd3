#![no_main]

use libfuzzer_sys::fuzz_target;
use polydraw_core::pdgraph::SimplicialComplex;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(k) = SimplicialComplex::parse(s) {
            assert_eq!(SimplicialComplex::parse(&k.to_off()).unwrap(), k);
        }
    }
});
