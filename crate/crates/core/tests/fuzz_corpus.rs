//! Replays the checked-in fuzz corpus through the same entry points as the
//! fuzz targets, so the seeds stay exercised on stable toolchains.

use std::fs;
use std::path::PathBuf;

use dcdlab::experiment::{parse_sizes, MAX_SIZE_LIST};
use dcdlab::record::{parse_jsonl, to_jsonl, Threshold};
use dcdlab::search::SearchWitness;
use dcdlab::setfile::{format_set, parse_set};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn set_file_seeds() {
    let mut ok = 0;
    for (name, data) in seeds("set_file") {
        if let Ok(set) = parse_set(&data) {
            ok += 1;
            assert_eq!(
                parse_set(format_set(&set, &[]).as_bytes()).unwrap(),
                set,
                "{name}"
            );
        }
    }
    assert!(ok >= 3);
}

#[test]
fn size_list_seeds() {
    for (_, data) in seeds("size_list") {
        if let Ok(sizes) = parse_sizes(std::str::from_utf8(&data).unwrap()) {
            assert!(!sizes.is_empty() && sizes.len() <= MAX_SIZE_LIST);
        }
    }
}

#[test]
fn records_jsonl_seeds() {
    let mut ok = 0;
    for (name, data) in seeds("records_jsonl") {
        if let Ok(records) = parse_jsonl(&data) {
            ok += 1;
            assert_eq!(to_jsonl(&records).as_bytes(), data.as_slice(), "{name}");
        }
    }
    assert!(ok >= 2);
}

#[test]
fn witness_json_seeds() {
    let mut ok = 0;
    for (name, data) in seeds("witness_json") {
        match SearchWitness::from_json(&data) {
            Ok(w) => {
                ok += 1;
                w.validate().unwrap();
                assert_eq!(
                    SearchWitness::from_json(w.to_json().as_bytes())
                        .unwrap()
                        .objective,
                    w.objective
                );
            }
            Err(_) => assert!(name.starts_with("wrong"), "{name} should parse"),
        }
    }
    assert_eq!(ok, 2);
}

#[test]
fn threshold_seeds() {
    for (_, data) in seeds("threshold") {
        if let Ok(t) = Threshold::parse(std::str::from_utf8(&data).unwrap()) {
            assert_eq!(Threshold::parse(&t.to_string()).unwrap(), t);
        }
    }
}
