use std::process::{Command, Output};

use serde_json::Value;

fn nlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlie"))
        .args(args)
        .env_remove("NLIE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn count_both() {
    let v = json(&nlie(&["count", "-n", "2", "-d", "3", "-w", "3", "--both"]));
    assert_eq!(v, serde_json::json!({"formula": 9, "oracle": 8, "agree": false}));
}

#[test]
fn count_formula_only() {
    let v = json(&nlie(&["count", "-n", "2", "-d", "4", "-w", "3", "--formula"]));
    assert_eq!(v, serde_json::json!({"formula": 24}));
}

#[test]
fn heisenberg_schur_multiplier() {
    let v = json(&nlie(&["multiplier", "heisenberg(2,1)", "-c", "1"]));
    assert_eq!(v["multiplier_dim"], 2);
}

#[test]
fn validate_abelian_five() {
    let v = json(&nlie(&["validate", "abelian(2,5)"]));
    assert_eq!(v["valid"], true);
}

#[test]
fn invalid_algebra_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "dim": 3, "basis": ["a","b","c"], "brackets": [
            {"args":[1,2],"value":[[1,1,1]]},
            {"args":[1,3],"value":[[1,1,1]]},
            {"args":[2,3],"value":[[1,1,2]]}]}"#,
    )
    .unwrap();
    let out = nlie(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_flag_is_input_error() {
    assert_eq!(nlie(&["count", "-n", "2", "--nope"]).status.code(), Some(2));
}

#[test]
fn malformed_file_reports_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, r#"{"n": 2, "dim": 2, "brackets": [{"args": [2, 1], "value": []}]}"#).unwrap();
    let out = nlie(&["series", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("brackets[0].args"));

    std::fs::write(&path, "{\"n\": 2,\n  \"dim\": }").unwrap();
    let out = nlie(&["series", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn resource_guard_is_input_error() {
    let out = nlie(&["--max-trees", "10", "graded", "-n", "2", "-d", "4", "-w", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource guard"));
}

#[test]
fn emitted_free_nilpotent_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    let v = json(&nlie(&["free-nilpotent", "-n", "2", "-d", "2", "-k", "3", "--emit", path.to_str().unwrap()]));
    assert_eq!(v["dim"], 5);
    let s = json(&nlie(&["series", path.to_str().unwrap(), "--lower"]));
    assert_eq!(s["lower"], serde_json::json!([5, 3, 2, 0]));
}

#[test]
fn heisenberg_closed_form_agrees() {
    let v = json(&nlie(&["heisenberg", "-n", "3", "-m", "1"]));
    assert_eq!((v["multiplier_dim"].as_u64(), v["agree"].as_bool()), (Some(3), Some(true)));
}

#[test]
fn zcstar_of_heisenberg() {
    let v = json(&nlie(&["zcstar", "heisenberg(2,2)", "-c", "1"]));
    assert_eq!((v["dim"].as_u64(), v["capable"].as_bool()), (Some(1), Some(false)));
    let v = json(&nlie(&["zcstar", "heisenberg(2,1)"]));
    assert_eq!(v["capable"], true);
}

#[test]
fn cache_dir_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["graded", "-n", "2", "-d", "3", "-w", "4", "--basis"];
    let first = Command::new(env!("CARGO_BIN_EXE_nlie"))
        .args(args)
        .env("NLIE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = Command::new(env!("CARGO_BIN_EXE_nlie"))
        .args(args)
        .args(["--cache-dir", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(json(&second)["dim"], 18);
}

#[test]
fn bounds_on_custom_catalog_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let h = nlie(&["heisenberg", "-n", "2", "-m", "1", "--emit"]);
    std::fs::write(dir.path().join("h21.json"), &h.stdout).unwrap();
    let args = ["bounds", "--c-max", "1", "--catalog", dir.path().to_str().unwrap(), "--tsv"];
    let a = nlie(&args);
    let b = nlie(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("dim_cap\th21\t1\t-\tD\t3\t<=\t3"));
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "count", "table", "graded", "free-nilpotent", "series", "multiplier", "zcstar", "heisenberg", "bounds", "validate",
    ] {
        let out = nlie(&[sub, "--help"]);
        assert!(out.status.success(), "{sub}");
        assert!(out.stdout.len() > 40, "{sub}");
    }
}

#[test]
fn table_tsv_has_header_and_rows() {
    let out = nlie(&["table", "-n", "2", "--d-max", "3", "--w-max", "3", "--tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("3\t2\t3\t9\t8\tfalse\tfalse"));
}
