//! Replays the checked-in fuzz seeds through the same entry points the fuzz
//! targets exercise.

use std::fs;
use std::path::{Path, PathBuf};

use ringlab_core::expr::{build_str, parse_corpus, parse_elem_literal, parse_ring_expr};
use ringlab_core::report::decomposition_from_json;
use ringlab_core::ring::RingFactory;

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let bytes = fs::read(&path).unwrap();
            (path, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn parser_seeds_round_trip() {
    for (_, bytes) in seeds("ring_expr") {
        if let Ok(e) = parse_ring_expr(text(&bytes)) {
            assert_eq!(parse_ring_expr(&e.to_string()), Ok(e));
        }
    }
    for (_, bytes) in seeds("elem_literal") {
        if let Ok(l) = parse_elem_literal(text(&bytes)) {
            assert_eq!(parse_elem_literal(&l.to_string()), Ok(l));
        }
    }
    let parsed: Vec<bool> = seeds("corpus_file")
        .iter()
        .map(|(_, b)| parse_corpus(text(b)).is_ok())
        .collect();
    assert_eq!(parsed, [true, false, true]);
}

#[test]
fn build_seeds_respect_cap() {
    let f = RingFactory::new(512);
    let sizes: Vec<Option<usize>> = seeds("build_expr")
        .iter()
        .map(|(_, b)| build_str(text(b), &f).ok().map(|r| r.size()))
        .collect();
    assert_eq!(sizes[..3], [Some(25), Some(64), Some(2)]);
    assert!(sizes.contains(&None));
}

#[test]
fn record_seeds_decode() {
    let f = RingFactory::default();
    let rings: Vec<_> = ["Z25", "T2(Z2)", "prod(Z2,Z9)", "M2(Z2)"]
        .iter()
        .map(|t| build_str(t, &f).unwrap())
        .collect();
    let accepted: Vec<bool> = seeds("decomposition_record")
        .iter()
        .map(|(_, b)| {
            let value = serde_json::from_slice(&b[1..]).unwrap();
            decomposition_from_json(&rings[b[0] as usize % rings.len()], &value).is_ok()
        })
        .collect();
    assert_eq!(accepted, [true, true, true, true, true, false]);
}
