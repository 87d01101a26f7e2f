#![no_main]

use dcdlab::setfile::{format_set, parse_set};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(set) = parse_set(data) {
        assert!(set.elements().windows(2).all(|w| w[0] < w[1]));
        let again = parse_set(format_set(&set, &[]).as_bytes()).expect("formatted set parses");
        assert_eq!(set, again);
    }
});
