//! End-to-end tests of the kms binary: exit codes, output formats, and the
//! worked examples a first-time user would try.

use std::process::{Command, Output};

fn kms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json stdout")
}

/// Complex values serialize as [re, im] pairs.
fn as_pair(v: &serde_json::Value) -> (f64, f64) {
    let a = v.as_array().expect("two-element array");
    (a[0].as_f64().unwrap(), a[1].as_f64().unwrap())
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"][..], &["spectrum", "--help"][..]] {
        let out = kms(args);
        assert_eq!(code(&out), 0, "{args:?} exited {}", code(&out));
    }
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["no-such-command"],
        &["spectrum", "--n", "1", "--rho", "0.5"],
        &["spectrum", "--n", "5", "--rho", "abc"],
        &["spectrum", "--n", "5", "--rho", "2i"],
        &["approx", "--n", "8", "--rho", "1+1i", "--method", "near-one"],
        &["sweep", "--n", "5", "--rho-start", "0", "--rho-end", "1", "--steps", "0"],
    ];
    for args in cases {
        let out = kms(args);
        assert_eq!(code(&out), 1, "{args:?} exited {}", code(&out));
    }
}

#[test]
fn negative_rho_accepted_without_equals_sign() {
    let cases: &[&[&str]] = &[
        &["spectrum", "--n", "5", "--rho", "-0.7"],
        &["spectrum", "--n", "4", "--rho", "-1+2i"],
        &["sweep", "--n", "4", "--rho-start", "-2", "--rho-end", "2", "--steps", "9"],
        &["bench", "--n-list", "16", "--rho", "-3"],
    ];
    for args in cases {
        let out = kms(args);
        assert_eq!(code(&out), 0, "{args:?} exited {}", code(&out));
    }
}

#[test]
fn numerical_overflow_exits_two() {
    let out = kms(&["approx", "--n", "2000", "--rho", "2", "--method", "large"]);
    assert_eq!(code(&out), 2, "overflowing request exited {}", code(&out));
}

#[test]
fn verify_quick_reports_every_check() {
    let out = kms(&["verify"]);
    assert_eq!(code(&out), 0, "verify exited {}", code(&out));
    let text = stdout_str(&out);
    assert!(
        text.contains("14/14 checks passed"),
        "unexpected summary:\n{text}"
    );
    for line in text.lines() {
        assert!(
            line.starts_with("PASS ") || line.ends_with("checks passed"),
            "unexpected line: {line}"
        );
    }
}

#[test]
fn fault_injection_exits_three() {
    let out = kms(&["verify", "--inject-fault", "9"]);
    assert_eq!(code(&out), 3, "faulted verify exited {}", code(&out));
    let text = stdout_str(&out);
    assert!(text.contains("FAIL factor-product"), "fault not attributed:\n{text}");
    assert!(text.contains("13/14 checks passed"), "unexpected summary:\n{text}");
}

#[test]
fn spectrum_reports_known_eigenvalue() {
    let out = kms(&["spectrum", "--n", "5", "--rho", "1.5"]);
    assert_eq!(code(&out), 0, "spectrum exited {}", code(&out));
    let v = json(&out);
    let lambda = v["pairs"][1]["lambda"].as_f64().unwrap();
    assert!(
        (lambda + 5.0).abs() <= 1e-9,
        "lambda_1 = {lambda}, want -5"
    );
    assert_eq!(v["pairs"][1]["klass"], "Ordinary");
    assert_eq!(v["classes"]["positive"], true);
    let residual = v["diagnostics"]["max_residual"].as_f64().unwrap();
    assert!(residual <= 1e-8, "residual {residual:.3e}");
}

#[test]
fn spectrum_identity_at_zero_in_csv() {
    let out = kms(&["spectrum", "--n", "4", "--rho", "0", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "header plus one row per eigenvalue");
    assert_eq!(
        lines[0],
        "rho_re,rho_im,k,lambda_re,lambda_im,mu_re,mu_im,klass,zero_type"
    );
    for row in &lines[1..] {
        assert!(
            row.contains(",1.0000000000000000e0,0.0000000000000000e0,"),
            "eigenvalue not exactly one: {row}"
        );
    }
}

#[test]
fn complex_parameter_with_double_eigenvalue() {
    let out = kms(&["spectrum", "--n", "3", "--rho", "0+2.8284271247461903i"]);
    assert_eq!(code(&out), 0, "spectrum exited {}", code(&out));
    let v = json(&out);
    assert_eq!(v["used_oracle_fallback"], false);
    let lambdas: Vec<(f64, f64)> =
        v["pairs"].as_array().unwrap().iter().map(|p| as_pair(&p["lambda"])).collect();
    assert_eq!(lambdas.len(), 3);
    let near_minus_three = lambdas
        .iter()
        .filter(|(re, im)| ((re + 3.0).powi(2) + im * im).sqrt() <= 1e-5)
        .count();
    assert_eq!(near_minus_three, 2, "eigenvalues {lambdas:?}");
    let top = lambdas
        .iter()
        .map(|(re, im)| ((re - 9.0).powi(2) + im * im).sqrt())
        .fold(f64::INFINITY, f64::min);
    assert!(top <= 1e-9, "missing eigenvalue 9: {lambdas:?}");
}

#[test]
fn sweep_is_deterministic_and_complete() {
    let args = &[
        "sweep", "--n", "5", "--rho-start", "0", "--rho-end", "1.6", "--steps", "161",
    ];
    let first = kms(args);
    let second = kms(args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "sweep output not reproducible");

    let text = stdout_str(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 161 * 5, "row count");

    // The grid hits rho = 1 exactly; there the spectrum collapses to
    // {n, 0, 0, 0, 0} with no rounding.
    let at_one: Vec<&str> = lines[1..]
        .iter()
        .filter(|row| row.starts_with("1.0000000000000000e0,"))
        .copied()
        .collect();
    assert_eq!(at_one.len(), 5, "rows at rho = 1");
    let mut lambdas: Vec<&str> =
        at_one.iter().map(|row| row.split(',').nth(3).unwrap()).collect();
    lambdas.sort_unstable();
    assert_eq!(
        lambdas,
        vec![
            "0.0000000000000000e0",
            "0.0000000000000000e0",
            "0.0000000000000000e0",
            "0.0000000000000000e0",
            "5.0000000000000000e0",
        ]
    );
}

#[test]
fn double_locus_lists_known_parameter() {
    let out = kms(&["double-locus", "--n", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let mut found = false;
    for row in text.lines().skip(1) {
        let cells: Vec<&str> = row.split(',').collect();
        let re: f64 = cells[2].parse().unwrap();
        let im: f64 = cells[3].parse().unwrap();
        let residual: f64 = cells[6].parse().unwrap();
        assert!(residual <= 1e-7, "locus residual {residual:.3e} in {row}");
        if (re + 1.0).abs() <= 1e-9 && (im - 2.0).abs() <= 1e-9 {
            found = true;
        }
    }
    assert!(found, "locus -1+2i missing:\n{text}");
}

#[test]
fn bench_marks_orders_beyond_oracle_reach() {
    let out = kms(&["bench", "--n-list", "64,6000", "--rho", "3"]);
    assert_eq!(code(&out), 0, "bench exited {}", code(&out));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "header plus one row per order");
    assert_eq!(lines[0], "n,t_structured_ms,t_oracle_ms");
    assert!(lines[1].starts_with("64,"), "bad row: {}", lines[1]);
    let big: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(big[0], "6000");
    assert!(big[1].parse::<f64>().is_ok(), "bad timing cell: {}", big[1]);
    assert_eq!(big[2], "size limit");
}

#[test]
fn large_orders_skip_vectors_instead_of_exhausting_memory() {
    let out = kms(&["spectrum", "--n", "100000", "--rho", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0, "large spectrum exited {}", code(&out));
    let text = stdout_str(&out);
    assert_eq!(text.lines().count(), 100_001, "row count at n = 100000");

    let small = json(&kms(&["spectrum", "--n", "5", "--rho", "0.5"]));
    assert!(small["pairs"][0]["vector"].is_array(), "small orders keep vectors");
    let big = json(&kms(&["spectrum", "--n", "3000", "--rho", "0.5"]));
    assert!(big["pairs"][0]["vector"].is_null(), "large orders drop vectors");
    assert!(big["diagnostics"]["trace_error"].as_f64().is_some());
}

#[test]
fn oversized_complex_request_is_a_usage_error() {
    let out = kms(&["spectrum", "--n", "600", "--rho", "0.5+0.5i"]);
    assert_eq!(code(&out), 1, "oversized complex request exited {}", code(&out));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let path = std::env::temp_dir().join(format!("kms_cli_out_{}.json", std::process::id()));
    let piped = kms(&["spectrum", "--n", "6", "--rho", "0.7"]);
    let to_file = kms(&[
        "spectrum", "--n", "6", "--rho", "0.7", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    assert!(to_file.stdout.is_empty(), "stdout not empty with --out");
    let written = std::fs::read(&path).expect("output file");
    let _ = std::fs::remove_file(&path);
    assert_eq!(written, piped.stdout, "file and stdout content differ");
}

#[test]
fn classify_check_agrees_with_brute_force() {
    let out = kms(&["classify", "--n", "4", "--rho", "0.5", "--check"]);
    assert_eq!(code(&out), 0, "classify exited {}", code(&out));
    let v = json(&out);
    assert_eq!(v["classes"], v["brute_force"], "predicate tables differ");
    assert_eq!(v["classes"]["positive_definite"], true);
}

#[test]
fn approx_reports_error_within_documented_bound() {
    let out = kms(&["approx", "--n", "10", "--rho", "3", "--method", "regula-falsi"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["first_index"], 2);
    let err = v["report"]["max_rel_error"].as_f64().unwrap();
    assert!(err <= 0.034, "regula falsi error {err:.3e} at n=10, rho=3");
    let approx = v["report"]["approx_values"].as_array().unwrap();
    let exact = v["report"]["exact_values"].as_array().unwrap();
    assert_eq!(approx.len(), 8);
    assert_eq!(approx.len(), exact.len());
}
