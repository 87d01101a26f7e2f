#![no_main]

use dcdlab::record::Threshold;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(t) = Threshold::parse(text) {
            assert_eq!(Threshold::parse(&t.to_string()).expect("display parses"), t);
        }
    }
});
