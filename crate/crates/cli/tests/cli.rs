//! Command-line contract tests: exit codes, output formats, configuration
//! precedence and reproducibility.

use std::fs;
use std::process::{Command, Output};

fn becorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_becorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn value_of(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("missing key {key} in output:\n{out}"))
        .parse()
        .expect("parsable float")
}

#[test]
fn point_identity_channel_value() {
    let out = becorbit(&["point", "--a", "1e-3", "--L", "1e-4", "--cs", "1e-3", "--r", "0.5", "--dtau", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n_num=8.59140914230e-1"), "{text}");
    assert!((value_of(&text, "n_num") - 0.859141).abs() < 1e-6);
}

#[test]
fn point_zero_acceleration_no_degradation() {
    let out = becorbit(&["point", "--a", "0", "--dtau", "0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(value_of(&text, "degradation_pct").abs() < 1e-7);
    assert_eq!(value_of(&text, "h"), 0.0);
}

#[test]
fn point_rejects_perturbation_breakdown() {
    let out = becorbit(&["point", "--a", "1e-2", "--L", "1e-2", "--cs", "1e-3", "--dtau", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // no computed output on invalid input
    assert!(stdout(&out).is_empty());
}

#[test]
fn point_requires_exactly_one_maneuver() {
    let out = becorbit(&["point"]);
    assert_eq!(out.status.code(), Some(2));
    let out = becorbit(&["point", "--dtau", "0.1", "--dphi", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_header_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    let args = |out: &std::path::Path| {
        vec![
            "sweep".to_string(),
            "--a".into(), "3e-3".into(),
            "--axis".into(), "dphi".into(),
            "--min".into(), "0".into(),
            "--max".into(), "2".into(),
            "--steps".into(), "40".into(),
            "--out".into(), out.to_str().unwrap().to_string(),
        ]
    };
    let run1 = Command::new(env!("CARGO_BIN_EXE_becorbit"))
        .args(args(&out1))
        .output()
        .unwrap();
    assert!(run1.status.success());
    let run2 = Command::new(env!("CARGO_BIN_EXE_becorbit"))
        .args(args(&out2))
        .output()
        .unwrap();
    assert!(run2.status.success());

    let a = fs::read(&out1).unwrap();
    let b = fs::read(&out2).unwrap();
    assert_eq!(a, b, "identical commands must produce byte-identical files");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "delta_phi,delta_tau,h,n0,n_pert,n_num,degradation_pct"
    );
    assert_eq!(lines.count(), 40);
    assert!(!text.contains('\r'), "LF endings only");
}

#[test]
fn sweep_single_step_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.csv");
    let run = becorbit(&[
        "sweep", "--axis", "dtau", "--min", "0.01", "--max", "0.01", "--steps", "1",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn sweep_unwritable_path_exits_4() {
    let run = becorbit(&[
        "sweep", "--axis", "dtau", "--min", "0", "--max", "0.01", "--steps", "2",
        "--out", "/nonexistent-dir/never/x.csv",
    ]);
    assert_eq!(run.status.code(), Some(4));
}

#[test]
fn hohmann_values_and_degenerate_orbit() {
    let out = becorbit(&["hohmann", "--rl", "6.771e6", "--rh", "6.772e6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!((value_of(&text, "dv_l") - 0.28327).abs() < 1e-4);
    assert!((value_of(&text, "period_exact") - 5545.47).abs() < 0.01);

    let out = becorbit(&["hohmann", "--rl", "6.771e6", "--rh", "6.771e6"]);
    let text = stdout(&out);
    assert_eq!(value_of(&text, "dv_l"), 0.0);
    assert_eq!(value_of(&text, "dv_h"), 0.0);
    assert_eq!(value_of(&text, "delta_tau"), 0.0);
}

#[test]
fn hohmann_rejects_inverted_orbits() {
    let out = becorbit(&["hohmann", "--rl", "6.772e6", "--rh", "6.771e6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_passes_clean_and_fails_injected() {
    let out = becorbit(&["validate"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all ") && text.contains("checks passed"));
    // every check line carries its residual
    assert!(text.lines().filter(|l| l.ends_with("pass")).count() >= 14);

    let out = becorbit(&["validate", "--perturb-omega", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# sweep setup\nr = 0.25\na = 2e-3\n").unwrap();

    // config overrides the built-in default r = 0.5
    let out = becorbit(&["point", "--dtau", "0", "--config", cfg.to_str().unwrap()]);
    let text = stdout(&out);
    let expected_r025 = (0.5_f64.exp() - 1.0) / 2.0;
    assert!((value_of(&text, "n0") - expected_r025).abs() < 1e-9);
    assert!((value_of(&text, "h") - 0.2).abs() < 1e-12, "a from config");

    // flags override the config file
    let out = becorbit(&[
        "point", "--dtau", "0", "--config", cfg.to_str().unwrap(), "--r", "0.9",
    ]);
    let text = stdout(&out);
    let expected_r09 = (1.8_f64.exp() - 1.0) / 2.0;
    assert!((value_of(&text, "n0") - expected_r09).abs() < 1e-9);
}

#[test]
fn malformed_config_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "this is not a pair\n").unwrap();
    let out = becorbit(&["point", "--dtau", "0", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn point_writes_optional_csv_row() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("row.csv");
    let run = becorbit(&["point", "--dtau", "0.01", "--out", out_path.to_str().unwrap()]);
    assert!(run.status.success());
    let text = fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("delta_phi,delta_tau,h,"));
}

#[test]
fn literal_mode_flag_accepted() {
    let out = becorbit(&["point", "--dtau", "0.01", "--mode", "literal"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // literal channel degrades even at small burn durations
    assert!(value_of(&text, "degradation_pct") > 0.1);
}
