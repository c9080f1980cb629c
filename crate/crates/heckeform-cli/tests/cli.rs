use std::io::Write;
use std::process::{Command, Output};

use heckeform::qseries::NumericReport;
use heckeform::vectorform::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckeform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn formal_minimal_grid_passes() {
    let out = run(&["verify-formal", "--w-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all pass"));
}

#[test]
fn formal_rejects_odd_bound() {
    let out = run(&["verify-formal", "--w-max", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn formal_json_report_round_trips() {
    let out = run(&["verify-formal", "--w-max", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&out)).expect("valid report JSON");
    assert!(report.all_pass());
    assert!(!report.checks.is_empty());
}

#[test]
fn numeric_builtin_passes() {
    let out = run(&["verify-numeric", "--builtin", "--tol", "1e-8", "--terms", "64"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn numeric_unattainable_tolerance_reports_failure() {
    let out = run(&["verify-numeric", "--builtin", "--tol", "1e-15", "--terms", "64"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn numeric_json_report_round_trips() {
    let out = run(&[
        "verify-numeric",
        "--builtin",
        "--points",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: NumericReport = serde_json::from_str(&stdout(&out)).expect("valid report JSON");
    assert!(report.all_pass());
}

#[test]
fn numeric_deterministic_given_seed() {
    let args = ["verify-numeric", "--builtin", "--points", "4", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn numeric_rejects_bad_spec_file() {
    let out = run(&["verify-numeric", "--spec", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(2));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\"weight\": 4}}").unwrap();
    let out = run(&["verify-numeric", "--spec", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mu"));
}

#[test]
fn numeric_accepts_spec_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"mu": 3, "weight": 6, "depth": 1,
            "coefficients": [
                {{"k": 0, "series": {{"builtin": "E6"}}, "scale": [[-1],[3]]}},
                {{"k": 1, "series": {{"builtin": "E4"}}, "scale": [[1],[3]]}}
            ]}}"#
    )
    .unwrap();
    let out = run(&["verify-numeric", "--spec", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn numeric_rejects_point_outside_region() {
    let out = run(&["verify-numeric", "--builtin", "--point", "0,3.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn show_pascal_matches_display() {
    let out = run(&["show", "pascal", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("z^2"), "{text}");
    assert!(text.contains("2*z"), "{text}");

    let out = run(&["show", "pascal", "--r", "0"]);
    assert_eq!(stdout(&out).trim(), "[1]");
}

#[test]
fn show_dry_is_signed_antidiagonal() {
    let out = run(&["show", "dry", "--r", "2"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].ends_with("1]"));
    assert!(lines[1].contains("-1"));
    assert!(lines[2].starts_with("[1"));
}

#[test]
fn show_rejects_oversized_r() {
    let out = run(&["show", "pascal", "--r", "13"]);
    assert_eq!(out.status.code(), Some(2));
}
