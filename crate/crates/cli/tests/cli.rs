use std::process::{Command, Output};

use serde_json::Value;

fn grasstc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasstc"))
        .args(args)
        .env_remove("GRASSTC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json", "--no-timestamp"];
    all.extend_from_slice(args);
    let out = grasstc(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn ring_reports_betti_numbers() {
    let v = json(&["ring", "-k", "2", "-n", "4"]);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["total"], 6);
    assert_eq!(v["betti"], serde_json::json!([1, 1, 2, 1, 1]));
}

#[test]
fn heights_and_cup_length() {
    let v = json(&["height", "-k", "2", "-n", "6"]);
    assert_eq!(v["heights"][0]["height"], 6);
    let v = json(&["height", "-k", "2", "-n", "6", "--class", "w1^2 + w2"]);
    assert!(v["heights"][0]["height"].is_u64());
    let v = json(&["cuplength", "-k", "3", "-n", "9"]);
    assert_eq!(v["length"], 16);
    assert_eq!(v["cat_lower"], 17);
}

#[test]
fn zcl_and_bounds() {
    let v = json(&["zcl", "-k", "2", "-n", "4"]);
    assert_eq!(v["zcl"], 4);
    assert_eq!(v["tc_lower"], 5);
    let v = json(&["zcl", "-k", "3", "-n", "11", "--exact"]);
    assert_eq!(v["zcl"], 30);
    let v = json(&["bounds", "-k", "2", "-n", "13"]);
    assert_eq!(v["tc"]["lower"], 29);
    assert_eq!(v["tc"]["upper"], 43);
}

#[test]
fn cells_by_dimension() {
    let v = json(&["cells", "-k", "2", "-n", "5"]);
    assert_eq!(v["total"], 10);
    let v = json(&["cells", "-k", "2", "-n", "5", "--dimension", "3"]);
    assert_eq!(v["counts"][3], 2);
}

#[test]
fn table_csv_has_one_row_per_pair() {
    let out = grasstc(&[
        "--format",
        "csv",
        "table",
        "--k-range",
        "2..=3",
        "--n-range",
        "6..8",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.records().count(), 4);
}

#[test]
fn output_is_deterministic_without_timestamp() {
    let args = ["--no-timestamp", "bounds", "-k", "3", "-n", "8"];
    let a = grasstc(&args);
    let b = grasstc(&args);
    assert_eq!(a.stdout, b.stdout);
    let with = grasstc(&["bounds", "-k", "3", "-n", "8"]);
    assert!(String::from_utf8_lossy(&with.stdout).contains("generated at unix time"));
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(grasstc(&["zcl", "-k", "2"]).status.code(), Some(1));
    assert_eq!(grasstc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        grasstc(&["height", "-k", "2", "-n", "6", "--class", "w7"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        grasstc(&["table", "--k-range", "3..2", "--n-range", "6"])
            .status
            .code(),
        Some(1)
    );
    // Help is not an error.
    assert_eq!(grasstc(&["--help"]).status.code(), Some(0));
    // A table cap too small for the full ring gives a partial report.
    let out = grasstc(&["--max-degree-cap", "4", "bounds", "-k", "3", "-n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    // Known closed-form discrepancies make the verification suite fail.
    let out = grasstc(&["verify", "--suite", "paper", "--max-k", "2", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_json_records_both_values() {
    let out = grasstc(&[
        "--format",
        "json",
        "--no-timestamp",
        "verify",
        "--max-k",
        "2",
        "--max-n",
        "6",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        for key in ["id", "expected", "provenance", "computed", "status"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
    let fail = records.iter().find(|r| r["status"] == "fail").unwrap();
    assert!(!fail["expected"].as_str().unwrap().is_empty());
    assert!(!fail["computed"].as_str().unwrap().is_empty());
    assert!(v["summary"]["pass"].as_u64().unwrap() > 0);
}

#[test]
fn cache_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--no-timestamp",
        "--cache-dir",
        d,
        "zcl",
        "-k",
        "3",
        "-n",
        "7",
    ];
    let first = grasstc(&args);
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = grasstc(&args);
    assert_eq!(first.stdout, second.stdout);
}
