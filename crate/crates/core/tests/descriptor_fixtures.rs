use std::path::PathBuf;

use skewmdp::descriptor;
use skewmdp::explore::span_invariance;
use skewmdp::mdp::{classify, ClassifyOptions};

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    assert!(out.len() >= 5);
    out
}

#[test]
fn write_of_read_is_byte_identical() {
    let tmp = std::env::temp_dir().join(format!("skewmdp-fixture-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    for path in fixtures() {
        let bytes = std::fs::read_to_string(&path).unwrap();
        let code = descriptor::read(&path).unwrap();
        assert_eq!(descriptor::to_json(&code), bytes, "{}", path.display());
        let copy = tmp.join(path.file_name().unwrap());
        descriptor::write(&copy, &code).unwrap();
        assert_eq!(std::fs::read_to_string(&copy).unwrap(), bytes);
    }
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn every_fixture_is_mdp() {
    for path in fixtures() {
        let code = descriptor::read(&path).unwrap();
        let r = classify(&code, &ClassifyOptions::default()).unwrap();
        assert!(r.minimal && r.mdp, "{}", path.display());
    }
}

#[test]
fn search_fixture_keeps_its_span_counterexample() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let code = descriptor::read(&dir.join("search-4-2-31.json")).unwrap();
    let inv = span_invariance(&code, &[vec![1, 2, 3], vec![1, 2, 3]], 1 << 24).unwrap();
    assert_eq!(inv.cumulative, vec![true, true]);
    assert_eq!(inv.per_step, vec![true, false]);
}
