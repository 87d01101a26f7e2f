#![no_main]

use dcdlab::experiment::{parse_sizes, MAX_SIZE_LIST};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(sizes) = parse_sizes(text) {
            assert!(!sizes.is_empty());
            assert!(sizes.len() <= MAX_SIZE_LIST);
        }
    }
});
