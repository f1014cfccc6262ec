use std::process::{Command, Output};

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).env_remove("QZETA_PREC").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn linform_passes_on_grid_point() {
    let o = qzeta(&["linform", "--A", "4", "--r", "1", "--n", "6", "--eps", "1", "--q", "1/3", "--prec", "256"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["residual_pass"], true);
    assert_eq!(v["denom_pass"], true);
    let s: Vec<u64> = v["P"].as_array().unwrap().iter().map(|e| e["s"].as_u64().unwrap()).collect();
    assert_eq!(s, vec![0, 3]);
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        vec!["linform", "--A", "3", "--r", "1", "--n", "2", "--eps", "1", "--q", "1/3"],
        vec!["linform", "--A", "4", "--r", "3", "--n", "2", "--eps", "1", "--q", "1/3"],
        vec!["linform", "--A", "4", "--r", "1", "--n", "2", "--eps", "1", "--q", "0.5"],
        vec!["linform", "--A", "4", "--r", "1", "--n", "2", "--eps", "2", "--q", "1/3"],
        vec!["slope-S", "--A", "4", "--r", "1", "--q", "3/2", "--n", "2..4"],
        vec!["zeta3", "--n", "2", "--q", "1"],
        vec!["delta", "--A", "5"],
    ] {
        let o = qzeta(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?} produced output");
    }
}

#[test]
fn delta_values() {
    let o = qzeta(&["delta", "--A", "12", "--r", "2", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("delta(12,2) = 1.080059"));
    let v = json(&qzeta(&["delta", "--A", "12"]));
    assert_eq!(v["best_r"], 2);
    assert_eq!(v["exceeds_one"], true);
    let c = json(&qzeta(&["delta-const"]));
    assert!(c["value"].as_str().unwrap().starts_with("3.35891"));
}

#[test]
fn output_is_deterministic() {
    let args = ["zeta3", "--n", "3", "--q", "1/3"];
    let a = qzeta(&args);
    let b = qzeta(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn slope_csv_has_header_and_rows() {
    let o = qzeta(&["slope-D", "--A", "4", "--r", "1", "--q", "1/2", "--n", "5..8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,value,target,gap");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("5,"));
}

#[test]
fn failing_check_exits_one() {
    let o = qzeta(&["slope-S", "--A", "4", "--r", "1", "--q", "1/2", "--n", "2..6", "--max-gap", "0.0001"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fitted gap"));
}

#[test]
fn eisenstein_weight_eight() {
    let v = json(&qzeta(&["eisenstein", "--weight", "8", "--verify", "60"]));
    assert_eq!(v["basis"][0]["a"], 2);
    assert_eq!(v["basis"][0]["b"], 0);
    assert_eq!(v["basis"][0]["c"], "1/1");
    assert_eq!(v["verified_to"], 60);
}

#[test]
fn denom_probe_exits_zero_even_with_failures() {
    let o = qzeta(&["denom-probe", "--A", "4", "--r", "1", "--n", "1..2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().any(|r| r["pass"] == false));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qzeta")).args(["delta-const"]).env("QZETA_PREC", "16").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("delta.json");
    let o = qzeta(&["delta", "--A", "12", "--r", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["r"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
