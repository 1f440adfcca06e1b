use std::process::{Command, Output};

use serde_json::Value;

fn qgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgr")).args(args).env_remove("QGR_DEPTH").output().expect("spawn qgr")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn closed_form_starts_with_one() {
    let o = qgr(&["series", "--kind", "dot-closed", "--n", "4", "--a", "2", "--qdeg", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["payload"]["table"][0]["value"], "1");
    assert_eq!(v["meta"]["n"], 4);
}

#[test]
fn i_normalization_table() {
    let o = qgr(&["series", "--kind", "i-normalization", "--n", "3", "--a", "1,1,1", "--qdeg", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["payload"]["table"][0]["value"], "1");
}

#[test]
fn y_gamma_leading_class() {
    let o = qgr(&["series", "--kind", "y-gamma", "--n", "3", "--a", "", "--k", "1", "--j", "0", "--qdeg", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let entry = &v["payload"]["table"][0];
    let lead = entry["series"].as_array().unwrap().iter().find(|t| t["q"] == 0).unwrap();
    assert_eq!(lead["h"], 0);
    assert_eq!(lead["value"], entry["gamma"]);
    assert_eq!(entry["gamma"], "x2+x1");
}

#[test]
fn dual_construction_reports_equality() {
    let o = qgr(&["series", "--kind", "ddot", "--dual", "--n", "3", "--a", "1", "--qdeg", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["payload"]["table"]["equal"], true);
}

#[test]
fn verification_suites_pass() {
    for args in [
        vec!["verify", "--suite", "recursivity", "--n", "3", "--a", "", "--qdeg", "2"],
        vec!["verify", "--suite", "orthogonality", "--n", "3", "--a", "1", "--qdeg", "2"],
        vec!["verify", "--suite", "mpc", "--n", "4", "--a", "2", "--qdeg", "3", "--zdeg", "3"],
        vec!["verify", "--suite", "all", "--n", "3", "--a", "1", "--qdeg", "1", "--zdeg", "1"],
    ] {
        let o = qgr(&args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert_eq!(json(&o)["payload"]["all_pass"], true);
    }
}

#[test]
fn mutation_exits_one_with_offending_coefficient() {
    let o = qgr(&["verify", "--suite", "recursivity", "--n", "3", "--qdeg", "2", "--mutate", "2:1"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let failed: Vec<&Value> =
        v["payload"]["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed[0]["detail"][0]["remainder"].as_str().unwrap().contains('h'));
}

#[test]
fn cohomology_tables() {
    let v = json(&qgr(&["cohomology", "--n", "3"]));
    assert_eq!(v["payload"]["basis"].as_array().unwrap().len(), 3);
    assert_eq!(v["payload"]["pairing"][0][2], "1");
    assert_eq!(v["payload"]["pairing"][1][1], "1");
    assert_eq!(v["payload"]["pairing"][0][0], "0");
    let v = json(&qgr(&["cohomology", "--n", "4"]));
    assert_eq!(v["payload"]["basis"].as_array().unwrap().len(), 6);
    let v = json(&qgr(&["cohomology", "--n", "3", "--equivariant", "--alpha", "7,49,343"]));
    let fp = v["payload"]["fixed_points"].as_array().unwrap();
    assert_eq!(fp.len(), 6);
    assert_eq!(fp[0]["pair"], serde_json::json!([1, 2]));
    assert_eq!(fp[0]["det_euler"], "56");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["series", "--n", "3"],
        vec!["series", "--kind", "bogus", "--n", "3"],
        vec!["series", "--kind", "dot", "--n", "3", "--a", "2,2"],
        vec!["cohomology", "--n", "3", "--equivariant", "--alpha", "1,1,2"],
        vec!["verify", "--suite", "nothing", "--n", "3"],
        vec!["verify", "--suite", "mpc", "--n", "3", "--mutate", "1:4"],
        vec!["frobnicate"],
    ] {
        let o = qgr(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(code(&qgr(&["--help"])), 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["series", "--kind", "dot", "--n", "4", "--a", "2", "--qdeg", "2", "--alpha", "default"];
    let (a, b) = (qgr(&args), qgr(&args));
    assert_eq!(a.stdout, b.stdout);
    let args = ["double-j", "--n", "3", "--a", "1", "--qdeg", "2"];
    let (a, b) = (qgr(&args), qgr(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out.json");
    std::fs::write(&cfg, format!("n = 3\na = 1\nqdeg = 1\noutput = {}\n", out.display())).unwrap();
    let o = qgr(&["--config", cfg.to_str().unwrap(), "series", "--kind", "z", "--qdeg", "2"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["meta"]["qdeg"], 2);
    assert_eq!(v["meta"]["a"], serde_json::json!([1]));
}

#[test]
fn depth_environment_override() {
    let args = ["series", "--kind", "dot", "--expand", "--n", "3", "--a", "1", "--qdeg", "1", "--depth", "2"];
    let shallow = json(&qgr(&args));
    let deep: Value = serde_json::from_slice(
        &Command::new(env!("CARGO_BIN_EXE_qgr")).args(args).env("QGR_DEPTH", "5").output().unwrap().stdout,
    )
    .unwrap();
    assert_eq!(shallow["meta"]["depth"], 2);
    assert_eq!(deep["meta"]["depth"], 5);
    let min_h = |v: &Value| v["payload"]["table"].as_array().unwrap().iter().map(|t| t["h"].as_i64().unwrap()).min();
    assert!(min_h(&deep) < min_h(&shallow));
}
