mod common;

use std::process::Command;

use common::{tuple_labels, Z2XZ5_SEQUENCE};

fn seqgroup(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_seqgroup"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_path(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("seqgroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_emits_the_fixture() {
    let (code, out, _) = seqgroup(&["construct", "--group", "Z2xZ5", "--kind", "dr-sequencing"]);
    assert_eq!(code, 0);
    let file: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(file["group"], "Z2xZ5");
    let terms: Vec<String> = serde_json::from_value(file["terms"].clone()).unwrap();
    assert_eq!(terms, tuple_labels(&Z2XZ5_SEQUENCE));
}

#[test]
fn construct_output_verifies_unchanged() {
    for (group, kind) in [
        ("Z2xZ5", "double-r-sequencing"),
        ("Z4xZ3", "symmetric-sequencing"),
        ("Z8xZ5", "symmetric-sequencing"),
        ("Z3xZ3", "symmetric-harmonious"),
        ("Z12", "double-r-sequencing"),
        ("Z2xZ4", "double-r-sequencing"),
    ] {
        let path = temp_path(&format!("{group}-{kind}.json"));
        let path_str = path.to_str().unwrap();
        let (code, out, _) = seqgroup(&["construct", "--group", group, "--kind", kind, "--out", path_str]);
        assert_eq!(code, 0, "{group} {kind}");
        assert!(out.is_empty());
        let (code, out, _) = seqgroup(&["verify", "--group", group, "--kind", kind, "--seq", path_str]);
        assert_eq!(code, 0, "{group} {kind}: {out}");
        assert!(out.contains("result: pass"));
    }
}

#[test]
fn trace_goes_to_stderr() {
    let (code, out, err) = seqgroup(&["construct", "--group", "Z4xZ3", "--kind", "dr-sequencing", "--trace"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"group\": \"Z4xZ3\""));
    let trace: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(trace["alpha"], 7);
}

#[test]
fn verify_reports_failures() {
    let path = temp_path("not-a-sequencing.json");
    std::fs::write(&path, "{\"group\": \"Z5\", \"terms\": [\"0\", \"1\", \"2\", \"3\", \"4\"]}\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = seqgroup(&["verify", "--group", "Z5", "--kind", "sequencing", "--seq", p, "--format", "json"]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["pass"], false);
    assert!(report["failure"].is_string());
    let (code, _, err) = seqgroup(&["verify", "--group", "Z7", "--kind", "sequencing", "--seq", p]);
    assert_eq!(code, 3);
    assert!(err.contains("Z5"));
    let (code, _, _) = seqgroup(&["verify", "--group", "Z5", "--kind", "sequencing", "--seq", "/nonexistent/x.json"]);
    assert_eq!(code, 3);
}

#[test]
fn search_exit_codes() {
    assert_eq!(seqgroup(&["search", "--group", "Q8", "--kind", "sequencing", "--exhaustive"]).0, 1);
    let (code, out, _) = seqgroup(&["search", "--group", "Z5", "--kind", "r-sequencing", "--format", "json"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["verdict"], "found");
    assert_eq!(report["witness"], serde_json::json!(["1", "2", "4", "3"]));
    assert_eq!(seqgroup(&["search", "--group", "D8", "--kind", "harmonious", "--max-nodes", "2"]).0, 2);
    assert_eq!(seqgroup(&["search", "--group", "Z5", "--kind", "sequencing", "--jobs", "3"]).0, 1);
}

#[test]
fn extend_from_a_file() {
    let path = temp_path("prefix.json");
    std::fs::write(&path, "{\"group\": \"Z7\", \"terms\": [\"1\", \"2\"]}\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = seqgroup(&["extend", "--group", "Z7", "--kind", "partial-harmonious", "--seq", p]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("witness: 1 2"));
    let (code, _, _) = seqgroup(&["extend", "--group", "Z7", "--kind", "harmonious", "--seq", p]);
    assert_eq!(code, 3);
    std::fs::write(&path, "{\"group\": \"Z7\", \"terms\": [\"1\", \"6\", \"2\", \"5\"]}\n").unwrap();
    let (code, _, err) = seqgroup(&["extend", "--group", "Z7", "--kind", "partial-harmonious", "--seq", p]);
    assert_eq!(code, 1);
    assert!(err.contains("invalid prefix"));
}

#[test]
fn report_is_stable() {
    let a = seqgroup(&["report", "--max-order", "8", "--format", "json"]);
    let b = seqgroup(&["report", "--max-order", "8", "--format", "json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let matrix: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    let rows = matrix["rows"].as_array().unwrap();
    assert_eq!(rows[0]["group"], "Z2");
    let q8 = rows.iter().find(|r| r["group"] == "Q8").unwrap();
    assert_eq!(q8["cells"][0]["verdict"], "refuted");
}
