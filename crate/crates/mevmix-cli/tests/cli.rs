//! End-to-end tests of the `mevmix` binary: exit codes, JSON error objects
//! on stderr, output determinism across thread counts, and the documented
//! output formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mevmix"))
}

fn write(dir: &Path, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn logistic_spec(dir: &Path) -> std::path::PathBuf {
    write(
        dir,
        "logistic.json",
        r#"{"preset": "asymmetric_logistic", "alphas": [0.5], "betas": [[1.0, 1.0]]}"#,
    )
}

fn stderr_error_code(output: &Output) -> String {
    let stderr = String::from_utf8_lossy(&output.stderr);
    let value: serde_json::Value =
        serde_json::from_str(stderr.trim()).unwrap_or_else(|e| {
            panic!("stderr is not a JSON error object: {:?} ({})", stderr, e)
        });
    value["error"]["code"].as_str().unwrap_or_default().to_string()
}

#[test]
fn validate_accepts_valid_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec = logistic_spec(dir.path());
    let output = bin().args(["validate", "--model"]).arg(&spec).output().unwrap();
    assert!(output.status.success(), "{:?}", output);
    let stdout: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("stdout is JSON");
    assert_eq!(stdout["valid"], true);
    assert_eq!(stdout["d"], 2);
}

#[test]
fn validate_reports_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "bad.json",
        r#"{"d": 2, "components": [
            {"alpha": 0.5, "beta": [0.6, 0.4], "copula": {"kind": "independence"}},
            {"alpha": 1.0, "beta": [0.3, 0.6], "copula": {"kind": "independence"}}
        ]}"#,
    );
    let output = bin().args(["validate", "--model"]).arg(&spec).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(stderr_error_code(&output), "invalid-model");
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("coordinate 1"),
        "violation must name the coordinate: {}",
        stderr
    );
}

#[test]
fn malformed_spec_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "broken.json", "{ not json");
    let output = bin().args(["validate", "--model"]).arg(&spec).output().unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert_eq!(stderr_error_code(&output), "malformed-spec");
}

#[test]
fn missing_file_exits_4() {
    let output = bin()
        .args(["validate", "--model", "/definitely/not/here.json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(4));
    assert_eq!(stderr_error_code(&output), "io");
}

#[test]
fn unknown_subcommand_exits_2_with_json() {
    let output = bin().arg("frobnicate").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_code(&output), "usage");
}

#[test]
fn taildep_reports_known_logistic_value() {
    let dir = tempfile::tempdir().unwrap();
    let spec = logistic_spec(dir.path());
    let output = bin()
        .args(["taildep", "--model"])
        .arg(&spec)
        .args(["--J", "2"])
        .output()
        .unwrap();
    assert!(output.status.success(), "{:?}", output);
    let reports: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let lambda = reports[0]["lambda"].as_f64().unwrap();
    assert!(
        (lambda - (2.0 - 2.0f64.sqrt())).abs() <= 1e-12,
        "lambda {}",
        lambda
    );
    assert_eq!(reports[0]["method"], "analytic-generic");
    assert_eq!(reports[0]["J"], serde_json::json!([2]));
}

#[test]
fn taildep_bad_j_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = logistic_spec(dir.path());
    let output = bin()
        .args(["taildep", "--model"])
        .arg(&spec)
        .args(["--J", "7"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_code(&output), "usage");
}

#[test]
fn eval_writes_cdf_and_exponent_columns() {
    let dir = tempfile::tempdir().unwrap();
    let spec = logistic_spec(dir.path());
    let e1 = (-1.0f64).exp();
    let grid = write(
        dir.path(),
        "grid.csv",
        &format!("u1,u2\n0.5,0.5\n{},{}\n", e1, e1),
    );
    let out = dir.path().join("eval.csv");
    let status = bin()
        .args(["eval", "--model"])
        .arg(&spec)
        .arg("--grid-file")
        .arg(&grid)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let content = std::fs::read_to_string(&out).unwrap();
    let mut lines = content.lines();
    assert_eq!(lines.next().unwrap(), "u1,u2,cdf,exponent");
    let last = lines.nth(1).unwrap();
    let fields: Vec<f64> = last.split(',').map(|f| f.parse().unwrap()).collect();
    // at (e^-1, e^-1) the exponent is sqrt(2) and the cdf exp(-sqrt(2))
    assert!((fields[2] - (-(2.0f64.sqrt())).exp()).abs() <= 1e-15);
    assert!((fields[3] - 2.0f64.sqrt()).abs() <= 1e-15);
}

#[test]
fn sample_outputs_are_thread_count_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let spec = logistic_spec(dir.path());
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.path().join(format!("s{}.csv", threads));
        let status = bin()
            .args(["sample", "--model"])
            .arg(&spec)
            .args(["--n", "20000", "--seed", "42", "--threads", threads, "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "outputs differ across thread counts");
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), "y1,y2");
    assert_eq!(text.lines().count(), 20_001);
}

#[test]
fn taildep_csv_format_and_empirical_block() {
    let dir = tempfile::tempdir().unwrap();
    let spec = logistic_spec(dir.path());
    let out = dir.path().join("reports.csv");
    let status = bin()
        .args(["taildep", "--model"])
        .arg(&spec)
        .args(["--J", "2", "--n", "50000", "--seed", "11", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let content = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = content.lines().collect();
    assert_eq!(
        lines[0],
        "J,lambda,numerator_mass,denominator_mass,method,ill_conditioned,threshold,n,stderr"
    );
    assert_eq!(lines.len(), 3); // header + analytic + empirical
    assert!(lines[1].contains("analytic-generic"));
    assert!(lines[2].contains("empirical"));
}

#[test]
fn verify_quick_run_passes() {
    // small n keeps this test fast; the full-size run is the acceptance
    // suite's job
    let output = bin()
        .args(["verify", "--seed", "42", "--n", "50000"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(output.status.success(), "verify failed:\n{}", stdout);
    assert!(stdout.contains("verify: 6/6 checks passed"), "{}", stdout);
}
