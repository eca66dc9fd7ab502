use std::process::{Command, Output};

use serde_json::Value;

fn wedderkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wedderkit"))
        .args(args)
        .env_remove("WEDDERKIT_BOUND")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_succeeds_with_exit_zero() {
    let out = wedderkit(&["classify", "sym:3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 6);
    assert_eq!(v["flags"]["generalized_strongly_monomial"], true);
    assert!(v["timings"].is_null());
}

#[test]
fn non_monomial_is_not_unknown() {
    let out = wedderkit(&["classify", "alt:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["flags"]["monomial"], false);
    assert_eq!(v["uncovered_dimension"], 34);
}

#[test]
fn exhausted_budget_exits_two() {
    let out = wedderkit(&["classify", "alt:5", "--chain-budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["undetermined"].as_array().unwrap().len(), 1);
    assert_eq!(wedderkit(&["pairs", "alt:5", "--chain-budget", "0"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_one() {
    let out = wedderkit(&["classify", "cyclic:x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    assert_eq!(wedderkit(&["corpus", "/nonexistent/dir"]).status.code(), Some(1));
    assert_eq!(wedderkit(&["verify", "no_such_suite"]).status.code(), Some(1));
}

#[test]
fn bound_comes_from_the_environment_unless_given() {
    let over = Command::new(env!("CARGO_BIN_EXE_wedderkit"))
        .args(["classify", "sym:4"])
        .env("WEDDERKIT_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(over.status.code(), Some(1));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_wedderkit"))
        .args(["classify", "sym:4", "--max-order", "24"])
        .env("WEDDERKIT_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn out_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.json");
    let out = wedderkit(&["classify", "quaternion:8", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["flags"]["strongly_monomial"], true);
}

#[test]
fn empty_corpus_is_fine() {
    let dir = tempfile::tempdir().unwrap();
    let out = wedderkit(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["groups"], 0);
}

#[test]
fn corpus_reports_errors_per_entry() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("list.specs"), "s3 = sym:3\nbroken = wreath:sym:3~sym:3\n").unwrap();
    std::fs::write(dir.path().join("c2.tbl"), "2\n0 1\n1 0\n").unwrap();
    let out = wedderkit(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["summary"]["groups"], 3);
    assert_eq!(v["summary"]["errors"], 1);
    assert_eq!(v["entries"][0]["name"], "c2");
}

#[test]
fn tables_load_by_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.tbl");
    std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let out = wedderkit(&["chars", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bad = dir.path().join("bad.tbl");
    std::fs::write(&bad, "2\n0 1\n0 1\n").unwrap();
    assert_eq!(wedderkit(&["classify", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn other_commands_run() {
    for args in [
        &["pairs", "dihedral:8"][..],
        &["idempotents", "sym:3"],
        &["chars", "quaternion:8"],
        &["embed", "sym:3"],
        &["verify", "lemma2"],
        &["verify", "oracle", "sym:3", "alt:4"],
        &["classify", "sym:4", "--text"],
    ] {
        let out = wedderkit(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let embed = json(&wedderkit(&["embed", "cyclic:6"]));
    assert_eq!(embed["tower_order"], 24);
    assert_eq!(embed["injective"], true);
    assert_eq!(embed["tower_flags"]["generalized_strongly_monomial"], true);
    assert_eq!(wedderkit(&["embed", "alt:5"]).status.code(), Some(1));
}

#[test]
fn jobs_must_be_positive() {
    assert_eq!(wedderkit(&["classify", "sym:3", "--jobs", "0"]).status.code(), Some(1));
    assert_eq!(wedderkit(&["classify"]).status.code(), Some(1));
    assert_eq!(wedderkit(&["--help"]).status.code(), Some(0));
}
