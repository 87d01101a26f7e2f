#![no_main]

use dcdlab::record::{parse_jsonl, to_jsonl};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(records) = parse_jsonl(data) {
        let text = to_jsonl(&records);
        let again = parse_jsonl(text.as_bytes()).expect("serialized records parse");
        assert_eq!(records.len(), again.len());
    }
});
