use std::process::{Command, Output};

use serde_json::Value;

fn fueter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fueter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn eval_cauchy_form_two() {
    let o = fueter(&[
        "eval",
        "--kernel",
        "cauchy-II",
        "--n",
        "3",
        "--s",
        "2,0,0,0",
        "--x",
        "0,1,0,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2/5 + 1/5*e1");
}

#[test]
fn eval_fueter_sce_closed_form_and_oracle_agree() {
    let base = [
        "eval",
        "--kernel",
        "fueter-sce",
        "--n",
        "3",
        "--s",
        "2,0,0,0",
        "--x",
        "0,1,0,0",
    ];
    let o = fueter(&base);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-8/25 - 4/25*e1");
    let mut with_oracle = base.to_vec();
    with_oracle.push("--oracle");
    assert_eq!(stdout(&fueter(&with_oracle)), "-8/25 - 4/25*e1");
}

#[test]
fn eval_singular_point_exits_two() {
    let o = fueter(&[
        "eval",
        "--kernel",
        "cauchy-II",
        "--n",
        "3",
        "--s",
        "1,0,2,0",
        "--x",
        "1,0,0,-2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular: s in [x]"));
}

#[test]
fn eval_parameter_errors_exit_two() {
    let o = fueter(&[
        "eval",
        "--kernel",
        "harmonic",
        "--n",
        "5",
        "--s",
        "2,0,0,0,0,0",
        "--x",
        "0,1,0,0,0,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = fueter(&[
        "eval",
        "--kernel",
        "cauchy-II",
        "--n",
        "3",
        "--s",
        "2,0,0",
        "--x",
        "0,1,0,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = fueter(&[
        "eval",
        "--kernel",
        "d-beta-delta-m",
        "--n",
        "3",
        "--m",
        "1",
        "--beta",
        "1",
        "--s",
        "2,0,0,0",
        "--x",
        "0,1,0,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_json_in_float_mode() {
    let o = fueter(&[
        "eval",
        "--kernel",
        "laplacian-power",
        "--n",
        "5",
        "--m",
        "2",
        "--s",
        "2,0,0,0,0,0",
        "--x",
        "0,1,0,0,0,0",
        "--mode",
        "float",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "float");
    assert_eq!(v["value"]["n"], 5);
}

#[test]
fn verify_appendix_passes() {
    let o = fueter(&["verify", "--suite", "appendix", "--hn-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn verify_catalog_flags_three_entries_and_exits_zero() {
    let o = fueter(&["verify", "--suite", "catalog", "--n", "5", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["flagged_known_discrepancies"], 3);
}

#[test]
fn verify_writes_report_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = fueter(&[
            "verify",
            "--suite",
            "theorem-d",
            "--n",
            "5",
            "--trials",
            "2",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        for c in v["cases"].as_array_mut().unwrap() {
            c["wall_time"] = Value::Null;
        }
        v
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    // h = 2 for n = 5: pairs (0,1), (0,2), (1,1), each at 2 points
    assert_eq!(a["summary"]["total"], 6);
    assert!(a["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["residual"] == 0.0));
}

#[test]
fn verify_reads_config_file_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"suite": "forms", "n": [3], "trials": 3, "format": "text"}"#,
    )
    .unwrap();
    let o = fueter(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--trials",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["trials"], 1);
    assert_eq!(v["config"]["n"], serde_json::json!([3]));
}

#[test]
fn verify_config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"suite": "forms", "bogus": 1}"#).unwrap();
    assert_eq!(
        fueter(&["verify", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fueter(&["verify", "--suite", "forms", "--n", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fueter(&["verify", "--suite", "forms", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fueter(&["verify", "--suite", "forms", "--mode", "fast"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(fueter(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_failure_exits_one() {
    // a zero tolerance cannot be met by rounded quadrature sums
    let o = fueter(&[
        "verify",
        "--suite",
        "quadrature",
        "--n",
        "3",
        "--tol",
        "0",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn quadrature_csv_table() {
    let o = fueter(&[
        "verify",
        "--suite",
        "quadrature",
        "--n",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,abs_error,ratio"));
    assert!(lines.count() >= 4);
}
