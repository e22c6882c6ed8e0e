use std::process::{Command, Output};

fn isofol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isofol")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn complex_table_up_to_rank_eight() {
    let out = isofol(&["tables", "complex", "--max-rank", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 32);
    assert!(text.lines().any(|l| l.starts_with("e8(C),E8,496,16,480,")));
}

#[test]
fn sl2_compact_type_is_trivial() {
    let out = isofol(&["foliate", "--family", "sl_R", "--n", "2", "--type", "a1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["dim_n_j"], 0);
    assert_eq!(v["report"]["toroidal_dim"], 1);
}

#[test]
fn exact_engine_on_request() {
    let out = isofol(&["foliate", "--family", "sp_R", "--n", "2", "--engine", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["engine"], "exact");
    assert_eq!(v["report"]["checks"]["darboux"], "pass");
    assert_eq!(v["report"]["dim_n_j"], 4);
}

#[test]
fn ruling_suite_for_one_family() {
    let out = isofol(&["verify", "--suite", "ruling", "--family", "sl_R", "--n", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("failed 0"));
}

#[test]
fn admissible_sets_of_so23() {
    let out = isofol(&["admissible", "--family", "so", "--p", "2", "--q", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["f_max"], 2);
    assert_eq!(v["maximal_sets"][0].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["foliate", "--bogus"][..],
        &["frobnicate"],
        &["foliate", "--family", "sl_R", "--n", "3", "--tol-verify", "1e-2"],
        &["foliate", "--family", "so", "--p", "2", "--q", "2"],
        &["foliate", "--family", "su", "--p", "1", "--q", "2", "--type", "a1"],
        &["foliate", "--family", "split", "--series", "BC", "--rank", "2"],
        &["verify", "--suite", "darboux", "--family", "su", "--p", "1", "--q", "2"],
    ] {
        let out = isofol(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = isofol(&["foliate", "--bogus"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("Usage"));
}

#[test]
fn tables_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("real.json");
    let out = isofol(&["tables", "real", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "foliation-table/1");
    let bad = dir.path().join("none").join("t.csv");
    let out = isofol(&["tables", "complex", "--output", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("none"));
}
