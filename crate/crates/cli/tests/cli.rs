use std::process::Command;

use serde_json::{json, Value};

use ringlab_core::expr::build_str;
use ringlab_core::report::decomposition_from_json;
use ringlab_core::ring::RingFactory;

fn ringlab(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .output()
        .expect("binary runs");
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().expect("exit code"), value)
}

#[test]
fn check_reports_property() {
    let (code, v) = ringlab(&["check", "kosan", "Z30"]);
    assert_eq!(code, 0);
    assert_eq!(v["property"], "kosan");
    assert_eq!(v["holds"], true);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["counterexample"], Value::Null);
}

#[test]
fn strict_check_fails_with_counterexample() {
    let (code, v) = ringlab(&["check", "kosan", "Z7", "--strict"]);
    assert_eq!(code, 1);
    assert_eq!(v["holds"], false);
    assert_eq!(v["counterexample"]["exponent"], 4);
    let (code, _) = ringlab(&["check", "kosan", "Z7"]);
    assert_eq!(code, 0);
}

#[test]
fn decompose_two_2idempotents() {
    let (code, v) = ringlab(&["decompose", "two_2idempotents", "Z25", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["decomposition"]["parts"], json!([24, 24]));
    assert_eq!(v["decomposition"]["nilpotent"], 5);
    let ring = build_str("Z25", &RingFactory::default()).unwrap();
    assert!(decomposition_from_json(&ring, &v["decomposition"]).is_ok());
}

#[test]
fn decompose_reports_absence() {
    let (code, v) = ringlab(&["decompose", "three_idempotents", "Z5", "4", "--scope", "unrestricted"]);
    assert_eq!(code, 0);
    assert_eq!(v["exists"], false);
    assert_eq!(v["decomposition"], Value::Null);
}

#[test]
fn witnesses_revalidate() {
    for expr in ["T2(Z2)", "prod(Z2,Z9)", "M2(Z2)"] {
        let (_, v) = ringlab(&["check", "tripotent_sum", expr, "--witnesses"]);
        let ring = build_str(expr, &RingFactory::default()).unwrap();
        let witnesses = v["witnesses"].as_array().unwrap();
        assert_eq!(witnesses.len(), ring.size());
        for w in witnesses {
            decomposition_from_json(&ring, w).unwrap();
        }
    }
}

#[test]
fn atlas_kosan_column() {
    let (code, v) = ringlab(&["atlas", "2..20"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 19);
    let kosan: Vec<u64> = rows
        .iter()
        .filter(|r| r["kosan"] == true)
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(kosan, [2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20]);
    assert!(rows.iter().all(|r| r["kosan"] == r["kosan_numbertheory"]));
}

#[test]
fn atlas_skips_ring_columns_beyond_cap() {
    let (code, v) = ringlab(&["atlas", "30..=32", "--cap", "31"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0]["kosan"], true);
    assert_eq!(rows[1]["kosan"], false);
    assert_eq!(rows[2]["kosan"], "skipped");
    assert_eq!(rows[2]["kosan_numbertheory"], true);
    let (code, v) = ringlab(&["atlas", "2..100001"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn classify_whole_ring_and_one_element() {
    let (_, v) = ringlab(&["classify", "T2(Z4)"]);
    assert_eq!(v["size"], 64);
    assert_eq!(v["elements"].as_array().unwrap().len(), 64);
    let (_, v) = ringlab(&["classify", "Z25", "--elem", "5"]);
    assert_eq!(v["element"]["nilpotency_index"], 2);
    let (_, v) = ringlab(&["classify", "prod(Z2,Z9)", "--elem", "(1,2)"]);
    assert_eq!(v["element"]["unit"], true);
    assert_eq!(v["element"]["inverse"], "(1,5)");
}

#[test]
fn error_exit_codes() {
    let (code, v) = ringlab(&["classify", "prod(Z2,"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["offset"], 8);
    let (code, v) = ringlab(&["classify", "Z5", "--elem", "[[1]]"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (2, Some("literal")));
    let (code, v) = ringlab(&["classify", "M3(Z4)"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (3, Some("cap_exceeded")));
    let (code, _) = ringlab(&["classify", "M3(Z4)", "--cap", "300000"]);
    assert_eq!(code, 0);
    let (code, v) = ringlab(&["check", "noetherian", "Z4"]);
    assert_eq!((code, v["error"]["property"].as_str()), (2, Some("noetherian")));
    let (code, v) = ringlab(&["frobnicate"]);
    assert_eq!((code, v["schema"].as_str()), (2, Some("1")));
}

#[test]
fn verify_custom_corpus_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("rings.txt");
    std::fs::write(&corpus, "# small rings\nZ6\n\nT2(Z3)  # triangular\nquot(Z90, 4)\n").unwrap();
    let out = dir.path().join("report.json");
    let run = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["verify", "--corpus"])
        .arg(&corpus)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert!(run.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rings"], json!(["Z6", "T2(Z3)", "quot(Z90,4)"]));
    assert_eq!(v["passed"], true);

    std::fs::write(&corpus, "Z6\nprod(Z2\n").unwrap();
    let (code, v) = ringlab(&["verify", "--corpus", corpus.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["line"], 2);
}
