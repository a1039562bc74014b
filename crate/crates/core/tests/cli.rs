//! The installed binary: exit codes, output formats and CSV destinations.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sconvex-quad"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sconvex-quad-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn bound_simpson_square() {
    let o = run(&["bound", "--alpha", "0.5", "--lambda", "0.3333333333333333", "--method", "power-mean"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("power-mean"), "{text}");
    assert!(text.contains("0.1388888888"), "{text}");
}

#[test]
fn usage_error_exits_one() {
    let o = run(&["bound", "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = run(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_function_is_reported() {
    let o = run(&["bound", "--fn", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn verify_csv_to_stdout_is_deterministic() {
    let args = ["verify", "--trials", "300", "--seed", "11", "--format", "csv"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("trial,alpha,lambda,s,q,fn,a,b,lhs,rhs,ratio,violation"));
    assert_eq!(lines.count(), 300);
}

#[test]
fn different_seeds_differ() {
    let a = run(&["verify", "--trials", "50", "--seed", "1", "--format", "csv"]);
    let b = run(&["verify", "--trials", "50", "--seed", "2", "--format", "csv"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn relative_csv_path_uses_env_dir() {
    let dir = scratch_dir("csv");
    let o = bin()
        .args(["compare", "--csv", "compare.csv"])
        .env("SCONVEX_CSV_DIR", &dir)
        .output()
        .expect("binary runs");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.join("compare.csv")).expect("csv written");
    assert!(csv.starts_with("alpha,lambda,s,q,bound_new,bound_classical,ratio,anomaly\n"));
    assert!(csv.lines().count() > 100);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn coeffs_csv_format() {
    let o = run(&["coeffs", "--alpha", "0.5", "--lambda", "0.3333333333333333", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("name,value\n"));
    assert!(text.lines().any(|l| l.starts_with("gamma2,")), "{text}");
}

#[test]
fn reduce_and_means_succeed() {
    let o = run(&["reduce"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["means", "--a", "1", "--b", "2", "--alpha", "0.5", "--lambda", "0.3333333333", "--s", "0.4", "--q", "2"]);
    assert!(o.status.success());
}

#[test]
fn identity_reports_small_residual() {
    let o = run(&["identity", "--fn", "exp", "--alpha", "0.3", "--lambda", "0.7", "--a", "0.5", "--b", "2", "--s", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
