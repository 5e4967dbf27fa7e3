//! Command-line front end for the Kac-Murdock-Szego spectral solver:
//! spectrum computation, parameter sweeps, class reports, double-eigenvalue
//! loci, approximation-error tables, benchmarks, and a self-check suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical or I/O failure,
//! 3 verification failure.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use kms_spectral::approx::{large_eig_report, near_one_report, regula_falsi_report, ApproxReport};
use kms_spectral::classify::{classify_params, verify_class_bruteforce, MatrixClass};
use kms_spectral::complexspectrum::{complex_spectrum, double_eigen_loci};
use kms_spectral::error::KmsError;
use kms_spectral::matrix::KmsParams;
use kms_spectral::oracle::oracle_eig_kms;
use kms_spectral::realspectrum::{real_eigenvalues, real_spectrum, MuKind, SpectrumResult};
use kms_spectral::verify::{run_checks_with_fault, CheckOutcome, VerifyLevel};
use kms_spectral::ZeroType;

#[derive(Parser)]
#[command(
    name = "kms",
    version,
    about = "Spectral toolkit for the Kac-Murdock-Szego matrix family K_n(rho) = [rho^|j-k|]"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the full spectrum of K_n(rho)
    Spectrum {
        /// Matrix order (n >= 2)
        #[arg(long)]
        n: usize,
        /// Parameter rho: a float or "a+bi" / "a-bi"
        #[arg(long, value_parser = parse_rho, allow_hyphen_values = true)]
        rho: Complex64,
        #[command(flatten)]
        common: Common,
    },
    /// Trace all eigenvalue curves over a real rho interval
    Sweep {
        #[arg(long)]
        n: usize,
        /// Left end of the rho interval
        #[arg(long, allow_negative_numbers = true)]
        rho_start: f64,
        /// Right end of the rho interval
        #[arg(long, allow_negative_numbers = true)]
        rho_end: f64,
        /// Number of sample points (endpoints included)
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Report which structural matrix classes K_n(rho) belongs to
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rho, allow_hyphen_values = true)]
        rho: Complex64,
        /// Confirm each predicate against a brute-force check where feasible
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Parameters where an eigenvalue -n appears with multiplicity two
    DoubleLocus {
        #[arg(long)]
        n: usize,
        /// Restrict to one symmetry class
        #[arg(long, value_enum, default_value_t = TypeFilter::All)]
        zero_type: TypeFilter,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form approximations with measured error against the exact solver
    Approx {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rho, allow_hyphen_values = true)]
        rho: Complex64,
        /// Which approximation family to evaluate
        #[arg(long, value_enum)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Time the structured solver against the dense oracle
    Bench {
        /// Comma-separated list of matrix orders
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Real parameter used for every run
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the named self-checks; nonzero exit on any failure
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// Testing hook: perturb one polynomial coefficient so a check fails
        #[arg(long)]
        inject_fault: Option<u64>,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Extra tolerance gate applied to cross-checked diagnostics; the
    /// solvers themselves always run to machine precision
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output format (default: json, except sweep which defaults to csv)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeFilter {
    Type1,
    Type2,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exponentially large eigenpairs for |rho| > 1
    Large,
    /// Interpolated angles for the oscillatory eigenvalues
    RegulaFalsi,
    /// Linearization around rho = 1
    NearOne,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Verification(String),
}

impl From<KmsError> for Failure {
    fn from(e: KmsError) -> Self {
        match e {
            KmsError::InvalidSize { .. } | KmsError::Domain { .. } => Failure::Usage(e.to_string()),
            KmsError::Verification { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numerical(format!("i/o failure: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Numerical(format!("serialization failure: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Spectrum { n, rho, common } => cmd_spectrum(n, rho, &common),
        Cmd::Sweep { n, rho_start, rho_end, steps, common } => {
            cmd_sweep(n, rho_start, rho_end, steps, &common)
        }
        Cmd::Classify { n, rho, check, common } => cmd_classify(n, rho, check, &common),
        Cmd::DoubleLocus { n, zero_type, common } => cmd_double_locus(n, zero_type, &common),
        Cmd::Approx { n, rho, method, common } => cmd_approx(n, rho, method, &common),
        Cmd::Bench { n_list, rho, out } => cmd_bench(&n_list, rho, &out),
        Cmd::Verify { level, inject_fault, out } => cmd_verify(level, inject_fault, &out),
    }
}

/// Accepts a plain float or an `a+bi` / `a-bi` literal; whitespace allowed.
fn parse_rho(raw: &str) -> Result<Complex64, String> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("rho is empty".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("'{raw}' is not a float or a+bi literal"));
    };
    let bytes = body.as_bytes();
    let mut sep = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx] as char;
        if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
            sep = Some(idx);
            break;
        }
    }
    let Some(sep) = sep else {
        return Err(format!(
            "'{raw}' needs an explicit real part, e.g. 0+{body}i"
        ));
    };
    let re = body[..sep]
        .parse::<f64>()
        .map_err(|_| format!("bad real part in '{raw}'"))?;
    let im = body[sep..]
        .parse::<f64>()
        .map_err(|_| format!("bad imaginary part in '{raw}'"))?;
    Ok(Complex64::new(re, im))
}

/// 17 significant digits, '.' decimal separator; identical inputs always
/// format to identical text.
fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            // A consumer like `head` may close the pipe early; that is not
            // an error worth reporting.
            if let Err(e) = std::io::stdout().lock().write_all(content.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    text
}

fn klass_text(klass: kms_spectral::EigenClass) -> &'static str {
    match klass {
        kms_spectral::EigenClass::Ordinary => "ordinary",
        kms_spectral::EigenClass::Extraordinary => "extraordinary",
    }
}

fn type_text(t: ZeroType) -> &'static str {
    match t {
        ZeroType::Type1 => "type1",
        ZeroType::Type2 => "type2",
    }
}

const SWEEP_HEADER: [&str; 9] = [
    "rho_re", "rho_im", "k", "lambda_re", "lambda_im", "mu_re", "mu_im", "klass", "zero_type",
];

fn real_rows(s: &SpectrumResult) -> Vec<Vec<String>> {
    let rho = s.params.rho;
    s.pairs
        .iter()
        .map(|p| {
            let (mu_re, mu_im) = match p.mu.kind {
                MuKind::Trigonometric => (p.mu.value, 0.0),
                MuKind::Hyperbolic => (0.0, p.mu.value),
            };
            vec![
                fmt17(rho.re),
                fmt17(rho.im),
                p.k.to_string(),
                fmt17(p.lambda),
                fmt17(0.0),
                fmt17(mu_re),
                fmt17(mu_im),
                klass_text(p.klass).to_string(),
                type_text(p.zero_type).to_string(),
            ]
        })
        .collect()
}

/// Above this order, spectrum output switches to eigenvalues-only: the
/// vectors take O(n^2) memory and the residual diagnostic needs them.
const VECTOR_LIMIT: usize = 2048;

/// The complex route goes through dense polynomial root finding and is
/// capped accordingly.
const COMPLEX_LIMIT: usize = 512;

fn cmd_spectrum(n: usize, rho: Complex64, common: &Common) -> Result<(), Failure> {
    let p = KmsParams::new(n, rho)?;
    let classes = classify_params(&p);
    if p.is_real() {
        let s = if n <= VECTOR_LIMIT { real_spectrum(&p)? } else { real_eigenvalues(&p)? };
        let gate = common.tol.max(64.0 * n as f64 * f64::EPSILON);
        if let Some(te) = s.diagnostics.trace_error {
            if te / n as f64 > gate {
                return Err(Failure::Numerical(format!(
                    "trace consistency {:.3e} exceeds the tolerance gate {:.3e}",
                    te / n as f64,
                    gate
                )));
            }
        }
        if let Some(de) = s.diagnostics.det_error {
            if de > gate {
                return Err(Failure::Numerical(format!(
                    "determinant consistency {de:.3e} exceeds the tolerance gate {gate:.3e}"
                )));
            }
        }
        match common.format_or(Format::Json) {
            Format::Json => {
                let mut value = serde_json::to_value(&s)?;
                value["classes"] = serde_json::to_value(classes)?;
                emit(&common.out, &format!("{:#}\n", value))
            }
            Format::Csv => emit(&common.out, &csv_table(&SWEEP_HEADER, &real_rows(&s))),
        }
    } else {
        if n > COMPLEX_LIMIT {
            return Err(Failure::Usage(format!(
                "complex-parameter spectra are limited to n <= {COMPLEX_LIMIT}, got {n}"
            )));
        }
        let s = complex_spectrum(&p)?;
        match common.format_or(Format::Json) {
            Format::Json => {
                let mut value = serde_json::to_value(&s)?;
                value["classes"] = serde_json::to_value(classes)?;
                emit(&common.out, &format!("{:#}\n", value))
            }
            Format::Csv => {
                let rows: Vec<Vec<String>> = s
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(idx, q)| {
                        vec![
                            fmt17(rho.re),
                            fmt17(rho.im),
                            idx.to_string(),
                            fmt17(q.lambda.re),
                            fmt17(q.lambda.im),
                            fmt17(q.mu.re),
                            fmt17(q.mu.im),
                            "n/a".to_string(),
                            type_text(q.zero_type).to_string(),
                        ]
                    })
                    .collect();
                emit(&common.out, &csv_table(&SWEEP_HEADER, &rows))
            }
        }
    }
}

fn cmd_sweep(
    n: usize,
    rho_start: f64,
    rho_end: f64,
    steps: usize,
    common: &Common,
) -> Result<(), Failure> {
    if steps == 0 {
        return Err(Failure::Usage("steps must be at least 1".into()));
    }
    if !rho_start.is_finite() || !rho_end.is_finite() {
        return Err(Failure::Usage("rho interval must be finite".into()));
    }
    let stride = if steps > 1 {
        (rho_end - rho_start) / (steps - 1) as f64
    } else {
        0.0
    };
    let samples: Vec<f64> = (0..steps).map(|j| rho_start + stride * j as f64).collect();

    // Sample points are independent; evaluate them on a worker pool and
    // reassemble in sample order so the output is deterministic.
    let workers = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1)
        .min(samples.len());
    let mut computed: Vec<(usize, Result<SpectrumResult, KmsError>)> =
        std::thread::scope(|scope| {
            let samples = &samples;
            let mut handles = Vec::new();
            for w in 0..workers {
                handles.push(scope.spawn(move || {
                    let mut part = Vec::new();
                    let mut j = w;
                    while j < samples.len() {
                        let r = KmsParams::real(n, samples[j]).and_then(|p| real_eigenvalues(&p));
                        part.push((j, r));
                        j += workers;
                    }
                    part
                }));
            }
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        });
    computed.sort_by_key(|(j, _)| *j);

    let mut rows = Vec::with_capacity(steps * n);
    for (_, r) in computed {
        rows.extend(real_rows(&r?));
    }
    match common.format_or(Format::Csv) {
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut obj = serde_json::Map::new();
                    for (name, cell) in SWEEP_HEADER.iter().zip(row.iter()) {
                        obj.insert(name.to_string(), serde_json::Value::String(cell.clone()));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            emit(&common.out, &format!("{:#}\n", serde_json::Value::Array(objects)))
        }
        Format::Csv => emit(&common.out, &csv_table(&SWEEP_HEADER, &rows)),
    }
}

fn cmd_classify(n: usize, rho: Complex64, check: bool, common: &Common) -> Result<(), Failure> {
    let p = KmsParams::new(n, rho)?;
    let report = classify_params(&p);
    let mut confirmations: Vec<(MatrixClass, Option<bool>)> = Vec::new();
    if check {
        for class in MatrixClass::ALL {
            match verify_class_bruteforce(&p, class) {
                Ok(v) => {
                    if v != report.get(class) {
                        return Err(Failure::Verification(format!(
                            "predicate {} disagrees with its brute-force check",
                            class.name()
                        )));
                    }
                    confirmations.push((class, Some(v)));
                }
                Err(KmsError::SizeLimit { .. }) => confirmations.push((class, None)),
                Err(e) => return Err(e.into()),
            }
        }
    }
    match common.format_or(Format::Json) {
        Format::Json => {
            let mut value = serde_json::json!({
                "n": n,
                "rho": [rho.re, rho.im],
                "classes": serde_json::to_value(report)?,
            });
            if check {
                let mut map = serde_json::Map::new();
                for (class, v) in &confirmations {
                    map.insert(
                        class.name().to_string(),
                        match v {
                            Some(b) => serde_json::Value::Bool(*b),
                            None => serde_json::Value::String("size limit".into()),
                        },
                    );
                }
                value["brute_force"] = serde_json::Value::Object(map);
            }
            emit(&common.out, &format!("{:#}\n", value))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = MatrixClass::ALL
                .iter()
                .map(|&class| {
                    let brute = if check {
                        match confirmations.iter().find(|(c, _)| *c == class).unwrap().1 {
                            Some(b) => b.to_string(),
                            None => "size limit".to_string(),
                        }
                    } else {
                        String::new()
                    };
                    vec![
                        class.name().to_string(),
                        report.get(class).to_string(),
                        brute,
                    ]
                })
                .collect();
            emit(&common.out, &csv_table(&["class", "predicate", "brute_force"], &rows))
        }
    }
}

fn cmd_double_locus(n: usize, filter: TypeFilter, common: &Common) -> Result<(), Failure> {
    let loci = double_eigen_loci(n)?;
    let gate = common.tol.max(1e-7);
    let kept: Vec<_> = loci
        .into_iter()
        .filter(|l| match filter {
            TypeFilter::All => true,
            TypeFilter::Type1 => l.zero_type == ZeroType::Type1,
            TypeFilter::Type2 => l.zero_type == ZeroType::Type2,
        })
        .collect();
    for l in &kept {
        if l.residual > gate {
            return Err(Failure::Verification(format!(
                "locus rho = {} re-verifies with residual {:.3e} above {gate:.1e}",
                l.rho, l.residual
            )));
        }
    }
    match common.format_or(Format::Json) {
        Format::Json => {
            let value = serde_json::json!({
                "n": n,
                "loci": serde_json::to_value(&kept)?,
            });
            emit(&common.out, &format!("{:#}\n", value))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = kept
                .iter()
                .map(|l| {
                    vec![
                        n.to_string(),
                        type_text(l.zero_type).to_string(),
                        fmt17(l.rho.re),
                        fmt17(l.rho.im),
                        fmt17(l.t0.re),
                        fmt17(l.t0.im),
                        fmt17(l.residual),
                    ]
                })
                .collect();
            emit(
                &common.out,
                &csv_table(
                    &["n", "zero_type", "rho_re", "rho_im", "t0_re", "t0_im", "residual"],
                    &rows,
                ),
            )
        }
    }
}

fn cmd_approx(n: usize, rho: Complex64, method: Method, common: &Common) -> Result<(), Failure> {
    let (report, first_index, name): (ApproxReport, usize, &str) = match method {
        Method::Large => (large_eig_report(n, rho)?, 0, "large"),
        Method::RegulaFalsi => {
            if rho.im != 0.0 {
                return Err(Failure::Usage(
                    "the regula-falsi approximation covers real rho only".into(),
                ));
            }
            let first = if rho.re <= 1.0 { 0 } else { 2 };
            (regula_falsi_report(n, rho.re)?, first, "regula-falsi")
        }
        Method::NearOne => {
            if rho.im != 0.0 {
                return Err(Failure::Usage(
                    "the near-one expansion covers real rho only".into(),
                ));
            }
            (near_one_report(n, rho.re)?, 0, "near-one")
        }
    };
    match common.format_or(Format::Json) {
        Format::Json => {
            let value = serde_json::json!({
                "n": n,
                "rho": [rho.re, rho.im],
                "method": name,
                "first_index": first_index,
                "report": serde_json::to_value(&report)?,
            });
            emit(&common.out, &format!("{:#}\n", value))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .approx_values
                .iter()
                .zip(report.exact_values.iter())
                .enumerate()
                .map(|(i, (a, e))| {
                    let diff = (a - e).norm();
                    let rel = if e.norm() < 1e-12 { diff } else { diff / e.norm() };
                    vec![
                        (first_index + i).to_string(),
                        fmt17(a.re),
                        fmt17(a.im),
                        fmt17(e.re),
                        fmt17(e.im),
                        fmt17(rel),
                    ]
                })
                .collect();
            emit(
                &common.out,
                &csv_table(
                    &["index", "approx_re", "approx_im", "exact_re", "exact_im", "rel_error"],
                    &rows,
                ),
            )
        }
    }
}

fn cmd_bench(n_list: &[usize], rho: f64, out: &Option<PathBuf>) -> Result<(), Failure> {
    if !rho.is_finite() {
        return Err(Failure::Usage("rho must be finite".into()));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let p = KmsParams::real(n, rho)?;
        let start = Instant::now();
        let _ = real_eigenvalues(&p)?;
        let t_structured = start.elapsed().as_secs_f64() * 1e3;
        let oracle_cell = match time_oracle(&p) {
            Ok(Some(ms)) => {
                eprintln!(
                    "n={n}: structured {t_structured:.3} ms, oracle {ms:.3} ms, ratio {:.1}",
                    ms / t_structured.max(1e-9)
                );
                format!("{ms:.3}")
            }
            Ok(None) => {
                eprintln!("n={n}: structured {t_structured:.3} ms, oracle skipped (size limit)");
                "size limit".to_string()
            }
            Err(e) => return Err(e),
        };
        rows.push(vec![
            n.to_string(),
            format!("{t_structured:.3}"),
            oracle_cell,
        ]);
    }
    emit(out, &csv_table(&["n", "t_structured_ms", "t_oracle_ms"], &rows))
}

fn time_oracle(p: &KmsParams) -> Result<Option<f64>, Failure> {
    let start = Instant::now();
    match oracle_eig_kms(p) {
        Ok(_) => Ok(Some(start.elapsed().as_secs_f64() * 1e3)),
        Err(KmsError::SizeLimit { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(level: Level, inject_fault: Option<u64>, out: &Option<PathBuf>) -> Result<(), Failure> {
    let level = match level {
        Level::Quick => VerifyLevel::Quick,
        Level::Full => VerifyLevel::Full,
    };
    let mut results = run_checks_with_fault(level, inject_fault);
    results.push(json_roundtrip_check());
    let mut text = String::new();
    let mut failed = 0usize;
    for r in &results {
        let _ = writeln!(
            text,
            "{} {} - {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    let _ = writeln!(text, "{}/{} checks passed", results.len() - failed, results.len());
    emit(out, &text)?;
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} check(s) failed")));
    }
    Ok(())
}

/// The one invariant that belongs to the front end itself: a serialized
/// spectrum must parse back to an identical value.
fn json_roundtrip_check() -> CheckOutcome {
    let run = || -> Result<bool, Failure> {
        let p = KmsParams::real(6, 1.3)?;
        let s = real_spectrum(&p)?;
        let text = serde_json::to_string(&s)?;
        let back: SpectrumResult = serde_json::from_str(&text)?;
        Ok(back == s)
    };
    match run() {
        Ok(true) => CheckOutcome {
            name: "json-roundtrip",
            passed: true,
            detail: "serialized spectrum parses back identically".into(),
        },
        Ok(false) => CheckOutcome {
            name: "json-roundtrip",
            passed: false,
            detail: "parsed spectrum differs from the original".into(),
        },
        Err(_) => CheckOutcome {
            name: "json-roundtrip",
            passed: false,
            detail: "serialization failed outright".into(),
        },
    }
}
