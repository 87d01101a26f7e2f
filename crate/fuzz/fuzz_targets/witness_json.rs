#![no_main]

use dcdlab::search::SearchWitness;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(w) = SearchWitness::from_json(data) {
        w.validate().expect("parsed witness is valid");
        let again = SearchWitness::from_json(w.to_json().as_bytes()).expect("round trip");
        assert_eq!(w.objective, again.objective);
    }
});
