//! End-to-end runs of the `fracfloquet` binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracfloquet")).args(args).output().expect("spawn fracfloquet")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const TOY: &str = r#"
name = "toy"

[model]
kind = "toy"
e0 = 1.0
omega = 1.0

[solve]
alpha = 1.0
truncation = 32
steps_per_period = 256
periods = 1.0
"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn eval_prints_fifteen_digits() {
    let o = bin(&["eval", "mlf", "1", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2.71828182845905");
    let o = bin(&["eval", "bessel", "0", "1"]);
    assert_eq!(stdout(&o).trim(), "0.765197686557967");
    let o = bin(&["eval", "mlf", "2", "1", "-9.869604401089358"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v + 1.0).abs() < 1e-12);
}

#[test]
fn eval_kernel_lines() {
    let o = bin(&["eval", "kernel", "1", "0.6", "--xi-max", "10", "--n-xi", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 20);
    for line in text.lines() {
        let cols: Vec<f64> = line.split_whitespace().map(|s| s.parse().unwrap()).collect();
        assert_eq!(cols.len(), 2);
    }
}

#[test]
fn invalid_config_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", &TOY.replace("alpha = 1.0\n", ""));
    let out = dir.path().join("out");
    let o = bin(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
    assert!(!out.exists());

    let cfg = write(dir.path(), "low.toml", &TOY.replace("truncation = 32", "truncation = 1"));
    let o = bin(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("solve.truncation"));
    assert!(!out.exists());
}

#[test]
fn classical_run_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "toy.toml", TOY);
    let out = dir.path().join("out");
    let o = bin(&["run", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["passed"], true);
    let traj = std::fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert_eq!(traj.lines().next(), Some("t,idx,re,im"));
    assert!(out.join("residual.csv").exists());
    assert!(!out.join("trajectory.csv.partial").exists());
}

#[test]
fn classical_sweep_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let text = TOY.replace("periods = 1.0", "periods = 1.0\nsweep = [4, 8, 16]");
    let cfg = write(dir.path(), "sweep.toml", &text);
    let out = dir.path().join("out");
    let o = bin(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
    let csv = std::fs::read_to_string(out.join("residual.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4, "{csv}");
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("report.json")).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let dec = checks.iter().find(|c| c["name"] == "ftse_residual_decreasing").unwrap();
    assert_eq!(dec["passed"], true, "{csv}");
    let code = o.status.code().unwrap();
    assert_eq!(code, if report["passed"] == true { 0 } else { 3 });
}

#[test]
fn flipped_sign_fails_verification() {
    let o = bin(&["verify", "--tier", "fast", "--flip-sign"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("FAIL criterion  3")), "{text}");
}
