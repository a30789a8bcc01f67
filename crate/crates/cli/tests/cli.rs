//! End-to-end tests of the binary: exit codes, JSON shape, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvemilnor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn write_doc(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const NODE_AXES: &str = r#"{
    "field": {"kind": "rational"},
    "variables": ["x", "y"],
    "branches": [
        {"series": {"x": [[1, "1"]], "y": []}},
        {"series": {"x": [], "y": [[1, "1"]]}}
    ]
}"#;

const NODE_DIAGONALS: &str = r#"{
    "field": {"kind": "rational"},
    "variables": ["x", "y"],
    "branches": [
        {"series": {"x": [[1, "1"]], "y": [[1, "1"]]}},
        {"series": {"x": [[1, "1"]], "y": [[1, "-1"]]}}
    ]
}"#;

const TANGENT_4_6_7: &str = r#"{
    "field": {"kind": "rational"},
    "variables": ["x", "y"],
    "branches": [
        {"series": {"x": [[4, "1"]], "y": [[6, "1"], [7, "1"]]}}
    ]
}"#;

#[test]
fn invariants_json_reports_the_curve() {
    let dir = tempfile::tempdir().unwrap();
    let e8 = stdout(&run(&["catalog", "E", "--param", "8"]));
    let path = write_doc(&dir, "e8.json", &e8);
    let out = run(&["invariants", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["invariants"]["delta"], 4);
    assert_eq!(v["invariants"]["milnor"], 8);
    assert_eq!(v["invariants"]["mult"], 3);
    assert_eq!(v["invariants"]["gorenstein"], true);
    assert_eq!(v["ade"], "E8");
    // Gamma serializes as its small values followed by the conductor.
    assert_eq!(v["gamma"], serde_json::json!([0, 3, 5, 6, 8]));
}

#[test]
fn classify_emits_null_for_curves_outside_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(&dir, "t467.json", TANGENT_4_6_7);
    let out = run(&["classify", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ade"], serde_json::Value::Null);

    let plain = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(stdout(&plain), "none\n");
}

#[test]
fn equisingular_accepts_a_change_of_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_doc(&dir, "axes.json", NODE_AXES);
    let b = write_doc(&dir, "diag.json", NODE_DIAGONALS);
    let out = run(&["equisingular", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");

    let c = write_doc(&dir, "t467.json", TANGENT_4_6_7);
    let out = run(&["equisingular", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn catalog_document_matches_the_normal_form() {
    let out = run(&["catalog", "D", "--param", "5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["variables"], serde_json::json!(["x", "y"]));
    let branches = v["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 2);
    assert_eq!(branches[0]["series"]["x"], serde_json::json!([]));
    assert_eq!(branches[0]["series"]["y"], serde_json::json!([[1, "1"]]));
    assert_eq!(branches[1]["series"]["x"], serde_json::json!([[2, "1"]]));
    assert_eq!(branches[1]["series"]["y"], serde_json::json!([[3, "1"]]));
}

#[test]
fn catalog_round_trips_through_invariants() {
    let dir = tempfile::tempdir().unwrap();
    for (family, param, expect_mu) in [("A", "3", 3u64), ("D", "6", 6), ("E", "7", 7)] {
        let doc = stdout(&run(&["catalog", family, "--param", param]));
        let path = write_doc(&dir, "curve.json", &doc);
        let out = run(&["invariants", path.to_str().unwrap(), "--json"]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["invariants"]["milnor"], expect_mu);
        assert_eq!(v["ade"], format!("{family}{param}"));
    }
}

#[test]
fn blowup_chain_json_shape() {
    let dir = tempfile::tempdir().unwrap();
    let e8 = stdout(&run(&["catalog", "E", "--param", "8"]));
    let path = write_doc(&dir, "e8.json", &e8);
    let out = run(&["blowup-chain", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({
            "steps": [
                {"delta": 4, "mult": 3, "rho": 3},
                {"delta": 1, "mult": 2, "rho": 1},
            ]
        })
    );
}

#[test]
fn semigroup_requires_exactly_one_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(&dir, "axes.json", NODE_AXES);
    let none = run(&["semigroup", path.to_str().unwrap()]);
    assert_eq!(none.status.code(), Some(2));
    let both = run(&["semigroup", path.to_str().unwrap(), "--value", "--numerical"]);
    assert_eq!(both.status.code(), Some(2));
    let ok = run(&["semigroup", path.to_str().unwrap(), "--value", "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["gamma"], serde_json::json!([1, 1]));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write_doc(&dir, "bad.json", "not json at all");
    let out = run(&["invariants", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let missing = dir.path().join("missing.json");
    let out = run(&["invariants", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let unknown_key = write_doc(
        &dir,
        "extra.json",
        r#"{"field": {"kind": "rational"}, "variables": ["x"], "branches": [], "bogus": 1}"#,
    );
    let out = run(&["invariants", unknown_key.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["catalog", "F", "--param", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["catalog", "D", "--param", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["catalog", "A", "--param", "2", "--field", "prime:2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_precision_exits_3_and_names_the_window() {
    let dir = tempfile::tempdir().unwrap();
    let e8 = stdout(&run(&["catalog", "E", "--param", "8"]));
    let path = write_doc(&dir, "e8.json", &e8);

    let out = bin()
        .args(["invariants", path.to_str().unwrap()])
        .env("CURVEMILNOR_PRECISION_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("window"), "diagnostic names the window: {err}");

    // The --truncation flag bounds the certified window the same way.
    let out = run(&["invariants", path.to_str().unwrap(), "--truncation", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["invariants", path.to_str().unwrap(), "--truncation", "64"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_paper_passes_and_is_deterministic() {
    let first = run(&["verify-paper"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.contains("PASS catalog-invariants"));
    assert!(!text.contains("FAIL"));
    let last = text.lines().last().unwrap();
    assert!(last.ends_with("0 failed"), "summary line: {last}");

    let second = run(&["verify-paper"]);
    assert_eq!(stdout(&second), text);

    let filtered = run(&["verify-paper", "--filter", "parity"]);
    assert_eq!(filtered.status.code(), Some(0));
    assert_eq!(stdout(&filtered).lines().count(), 3);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d7 = stdout(&run(&["catalog", "D", "--param", "7"]));
    let path = write_doc(&dir, "d7.json", &d7);
    let args = ["invariants", path.to_str().unwrap(), "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let args = ["semigroup", path.to_str().unwrap(), "--value", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
