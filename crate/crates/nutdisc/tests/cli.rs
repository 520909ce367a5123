//! End-to-end checks of the installed binary: output shapes, exit codes
//! and the environment knobs.

use std::process::{Command, Output};

fn nutdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nutdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn disc_prints_exact_rational() {
    let out = nutdisc(&["disc", "--matrix", "identity", "--N", "4", "--p", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1/2");
}

#[test]
fn disc_sup_norm_and_fractional_p() {
    let out = nutdisc(&["disc", "--matrix", "identity", "--N", "3", "--p", "inf"]);
    assert_eq!(stdout(&out).trim(), "3/2");
    let out = nutdisc(&["disc", "--matrix", "identity", "--N", "4", "--p", "2.5"]);
    assert!(out.status.success());
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!(v > 0.0 && v < 1.0);
}

#[test]
fn integral_both_asserts_equality() {
    let out = nutdisc(&[
        "integral", "--matrix", "identity", "--N", "21", "--method", "both",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "39/32\nmatch=true\n");
}

#[test]
fn figure1_csv_shape() {
    let out = nutdisc(&["scan", "figure1", "--n-max", "127"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,linf,s2");
    assert_eq!(lines.len(), 128);
    assert_eq!(lines[1], "1,1,1");
    // no diagnostics mixed into the data stream
    assert!(text.lines().all(|l| !l.starts_with('#')));
}

#[test]
fn gen_exact_and_decimal() {
    let out = nutdisc(&["gen", "--matrix", "identity", "--N", "4"]);
    assert_eq!(stdout(&out), "point\n0/1\n1/2\n1/4\n3/4\n");
    let out = nutdisc(&["gen", "--matrix", "upper1", "--N", "4", "--decimal", "3"]);
    assert_eq!(stdout(&out), "point\n0.000\n0.500\n0.750\n0.250\n");
}

#[test]
fn json_format_is_an_array_of_rows() {
    let out = nutdisc(&["scan", "figure1", "--n-max", "8", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 8);
    assert_eq!(rows[0]["N"], 1);
    assert_eq!(rows[0]["linf"], "1");
}

#[test]
fn invalid_input_exits_2() {
    let out = nutdisc(&["disc", "--matrix", "hilbert", "--N", "4", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nutdisc(&["disc", "--matrix", "identity", "--N", "4", "--p", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nutdisc(&["gen", "--matrix", "band:0", "--N", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_nutdisc"))
        .args(["gen", "--matrix", "identity", "--N", "100"])
        .env("NUTDISC_BUDGET", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budget"), "stderr was: {err}");
}

#[test]
fn precision_env_raises_truncation() {
    let out = Command::new(env!("CARGO_BIN_EXE_nutdisc"))
        .args(["integral", "--matrix", "identity", "--N", "21"])
        .env("NUTDISC_PRECISION", "128")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "39/32");
}

#[test]
fn verify_lemma1_passes_on_upper1() {
    let out = nutdisc(&["verify", "lemma1", "--matrix", "upper1", "--n-max", "64"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("N,fast,direct,equal,statement,residual"));
    assert_eq!(text.lines().count(), 65);
}

#[test]
fn scan_max_smallest_maximizer() {
    let out = nutdisc(&["scan", "max", "--matrix", "identity", "--m", "2"]);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("2,5,7/8,"), "row was: {row}");
}

#[test]
fn explicit_matrix_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    // upper triangular 4x4 with an extra band
    std::fs::write(&path, "1,1,0,0\n0,1,1,0\n0,0,1,1\n0,0,0,1\n").unwrap();
    let spec = format!("explicit:{}", path.display());
    let out = nutdisc(&["gen", "--matrix", &spec, "--N", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "point\n0/1\n1/2\n3/4\n1/4\n");

    // a singular matrix is rejected with exit 2
    std::fs::write(&path, "0,1\n1,0\n").unwrap();
    let spec = format!("explicit:{}", path.display());
    let out = nutdisc(&["gen", "--matrix", &spec, "--N", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_thm1_verdicts() {
    // alpha = 1: the advertised rate matches the exact slope
    let out = nutdisc(&["verify", "thm1", "--alpha", "1", "--r-max", "12"]);
    assert!(out.status.success());

    // alpha = 2: the advertised rate understates the exact slope; the
    // driver still emits the full table but exits 1 with an explanation
    let out = nutdisc(&["verify", "thm1", "--alpha", "2", "--r-max", "12"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).lines().count(), 13);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("check failed"), "stderr was: {err}");
}

#[test]
fn verify_thm2_with_quadratic_norm() {
    let out = nutdisc(&[
        "verify", "thm2", "--a", "01", "--m-max", "8", "--p", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("m,N,status,l0,integral"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn scan_ratio_explicit_list() {
    let out = nutdisc(&[
        "scan", "ratio", "--matrix", "identity", "--family", "list:4,21,64", "--p", "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    // N = 21 row: L1 = 39/32 and ratio against ln 21
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(row[0], "21");
    assert_eq!(row[1], "39/32");
    let ratio: f64 = row[4].parse().unwrap();
    assert!((ratio - (39.0 / 32.0) / 21f64.ln()).abs() < 1e-12);

    let out = nutdisc(&["scan", "ratio", "--matrix", "identity", "--family", "thm1:1"]);
    assert_eq!(out.status.code(), Some(2)); // missing --r-max
}

#[test]
fn scan_bounds_small_sweep() {
    let out = nutdisc(&[
        "scan", "bounds", "--matrix", "column:011", "--n-max", "64", "--p", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("N,s2,lp_dec,lp_pow_exact,linf"));
    assert_eq!(text.lines().count(), 65);
    assert!(text.lines().skip(1).all(|l| l.ends_with("true,true,true")));
}

#[test]
fn output_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = nutdisc(&[
        "scan",
        "figure1",
        "--n-max",
        "16",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("N,linf,s2\n"));
    assert_eq!(written.lines().count(), 17);
}
