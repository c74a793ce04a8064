use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use twisted_bernoulli::exact::CycloElem;

fn run(dir: &Path, config: &str, extra: &[&str]) -> Output {
    let path = dir.join("config.json");
    std::fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_twisted-bernoulli"))
        .arg("--config")
        .arg(&path)
        .args(extra)
        .env_remove("TWISTED_BERNOULLI_JOBS")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classical_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        r#"{"command":"compute-numbers","d":1,"character":{"kind":"principal"},"xi":{"order":1,"exponent":0},"k":1,"n_max":4}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), serde_json::json!(["1/1", "-1/2", "1/6", "0/1", "-1/30"]));
}

#[test]
fn empty_verify_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), r#"{"command":"verify","grids":[]}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["summary"]["total"], 0);
}

#[test]
fn single_power_sum_shift_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        r#"{"command":"verify","grids":[{"identity":"eq_1_13","d":[1],"xi":[{"order":1,"exponent":0}],"k":[2],"n":[3]}]}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["total"], 1);
    assert_eq!(v["reports"][0]["lhs"]["scalar"], "3/1");
    assert_eq!(v["reports"][0]["rhs"]["scalar"], "3/1");
}

#[test]
fn classical_grid_of_sixteen() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        r#"{"command":"verify","grids":[{"identity":"eq_1_13","d":[1],"xi":[{"order":1,"exponent":0}],"k":[1,2,3,4],"n_max":4}]}"#,
        &["--format", "csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 17);
    assert!(lines[0].starts_with("identity,n,m,k,d"));
    assert!(lines[1..].iter().all(|l| l.starts_with("eq_1_13,") && l.contains(",true,")));
}

#[test]
fn config_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"command":"compute-numbers","n_max":3,"colour":1}"#, "colour"),
        (r#"{"n_max":3}"#, "command"),
        (r#"{"command":"frobnicate"}"#, "command"),
        (r#"{"command":"verify","grids":[{"identity":"theorem9","d":[1],"xi":[],"n_max":1}]}"#, "grids[0].identity"),
        (r#"{"command":"compute-numbers","n_max":3,"character":{"kind":"index","j":7},"d":5}"#, "character"),
        (r#"{"command":"volkenborn","p":4,"n":1}"#, "p"),
        (r#"{"command":"compute-numbers","n_max":3,"format":"xml"}"#, "format"),
    ];
    for (cfg, key) in cases {
        let out = run(dir.path(), cfg, &[]);
        assert_eq!(out.status.code(), Some(2), "{cfg}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(&format!("`{key}`")), "{cfg}: {err}");
        assert!(out.stdout.is_empty());
    }
    let out = run(dir.path(), "not json", &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unverified_instances_exit_one_with_reports() {
    // a twist whose field exceeds the conductor cap errors per instance
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        r#"{"command":"verify","grids":[{"identity":"m1_numbers","d":[1,2],"xi":[{"order":5000,"exponent":1},{"order":2,"exponent":1}],"n":[2]}]}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["summary"], serde_json::json!({"total": 4, "holds": 2, "fails": 0, "errors": 2}));
    let failing: Vec<&Value> = v["reports"].as_array().unwrap().iter().filter(|r| r["holds"] == false).collect();
    assert_eq!(failing.len(), 2);
    assert!(failing.iter().all(|r| r["error"].as_str().unwrap().contains("5000")));
}

#[test]
fn volkenborn_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), r#"{"command":"volkenborn","p":[2,3],"n":[0,1,2],"levels":5}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["passes"], true);
    assert_eq!(v["traces"].as_array().unwrap().len(), 6);
    let three_one = &v["traces"][4];
    assert_eq!(three_one["p"], 3);
    assert_eq!(three_one["n"], 1);
    let vals: Vec<&str> = three_one["records"].as_array().unwrap().iter().map(|r| r["valuation"].as_str().unwrap()).collect();
    assert_eq!(vals, ["1/1", "2/1", "3/1", "4/1", "5/1"]);
    let zero = &v["traces"][3]["records"][0];
    assert_eq!(zero["valuation"], "inf");
}

#[test]
fn output_file_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = run(
        dir.path(),
        r#"{"command":"compute-polynomial","d":5,"character":{"kind":"index","j":1},"xi":{"order":3,"exponent":2},"k":2,"n":3}"#,
        &["--out", target.to_str().unwrap(), "--jobs", "2"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    let values: Vec<Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(values.len(), 4);
    for v in values {
        let e: CycloElem = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(e.conductor(), 12);
        assert_eq!(serde_json::to_value(&e).unwrap(), v);
    }
}

#[test]
fn power_sum_and_env_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"command":"power-sum","k":2,"n":3}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_twisted-bernoulli"))
        .arg("--config")
        .arg(&path)
        .env("TWISTED_BERNOULLI_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), "14/1");
    let out = Command::new(env!("CARGO_BIN_EXE_twisted-bernoulli"))
        .arg("--config")
        .arg(&path)
        .env("TWISTED_BERNOULLI_JOBS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // the flag wins over a bad environment value
    let out = Command::new(env!("CARGO_BIN_EXE_twisted-bernoulli"))
        .arg("--config")
        .arg(&path)
        .args(["--jobs", "1"])
        .env("TWISTED_BERNOULLI_JOBS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"command":"verify","grids":[{"identity":["theorem1","theorem3","corollary4"],"d":[3],"character":"all","xi":[{"order":2,"exponent":1},{"order":3,"exponent":1}],"w1":[1,2],"w2":[2,3],"m":[1,2],"n_max":3}]}"#;
    let a = run(dir.path(), cfg, &["--jobs", "4"]);
    let b = run(dir.path(), cfg, &["--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_cells_are_compact() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        r#"{"command":"power-sum","d":4,"character":{"kind":"index","j":1},"k":2,"n":10}"#,
        &["--format", "csv"],
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k,n,value\n2,10,49/1\n");
    let out = run(dir.path(), r#"{"command":"volkenborn","p":3,"xi":{"order":3,"exponent":1},"n":1,"levels":3}"#, &["--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("3,1,zeta_3^1,1,inf,true"));
}
