//! Named self-checks over every module, runnable at two depths. The quick
//! level exercises closed-form identities and solver consistency on small
//! cases; the full level adds oracle-equivalence grids, zero-location
//! criteria, double-eigenvalue loci, and the approximation accuracy claims.
//! A seeded fault hook perturbs one polynomial coefficient so the negative
//! path of the harness can be tested end to end.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::approx::{large_eig_report, near_one_report, regula_falsi_report};
use crate::chebpoly::{poly_c, poly_p2n, poly_s, Polynomial, ZeroType};
use crate::classify::{classify_params, verify_class_bruteforce, MatrixClass};
use crate::complexspectrum::{complex_spectrum, double_eigen_loci, p2n_zeros};
use crate::error::Result;
use crate::matrix::{
    build_kms, kms_determinant, kms_inverse, DenseMatrix, KmsParams,
};
use crate::oracle::{cohn_unit_circle, lu_determinant, multiset_distance, oracle_eig, oracle_eig_kms};
use crate::realspectrum::{
    classify_eigenvalue, classify_eigenvalue_by_magnitude, real_eigenvalues, real_spectrum,
    EigenClass,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyLevel {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Run the self-check suite. Quick covers the identity and consistency
/// checks; Full appends the oracle grids and accuracy claims.
pub fn run_checks(level: VerifyLevel) -> Vec<CheckOutcome> {
    run_checks_with_fault(level, None)
}

/// Same as run_checks, but when fault_seed is set, one coefficient of the
/// factored characteristic polynomial inside the factor-product check is
/// perturbed (which coefficient depends deterministically on the seed), so
/// that exactly that check must fail. Exists to test the failure path.
pub fn run_checks_with_fault(level: VerifyLevel, fault_seed: Option<u64>) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, r: Result<String>| {
        let (passed, detail) = match r {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        out.push(CheckOutcome { name, passed, detail });
    };

    push("identity-at-zero", check_identity_at_zero());
    push("determinant-closed-form", check_determinant());
    push("tridiagonal-inverse", check_inverse());
    push("trace-and-product", check_trace_product());
    push("eigenpair-residuals", check_residuals());
    push("ordering-chains", check_ordering());
    push("magnitude-vs-range", check_magnitude_vs_range());
    push("factor-product", check_factor_product(fault_seed));
    push("reciprocal-zeros", check_reciprocal_zeros());
    push("zero-type-counts", check_type_counts());
    push("vector-symmetry", check_vector_symmetry());
    push("negation-symmetry", check_negation());
    push("extraordinary-counts", check_extraordinary_counts());

    if level == VerifyLevel::Full {
        push("oracle-grid-real", check_oracle_grid_real());
        push("oracle-grid-complex", check_oracle_grid_complex());
        push("unit-circle-criterion", check_unit_circle());
        push("continuity-at-one", check_continuity());
        push("double-eigenvalue-loci", check_loci());
        push("approximation-claims", check_approx_claims());
        push("class-predicates", check_class_predicates());
    }
    out
}

fn real_params(n: usize, rho: f64) -> Result<KmsParams> {
    KmsParams::real(n, rho)
}

fn check_identity_at_zero() -> Result<String> {
    let p = real_params(4, 0.0)?;
    let k = build_kms(&p)?;
    let id = DenseMatrix::identity(4);
    let diff = k.sub(&id).inf_norm();
    if diff != 0.0 {
        return fail(format!("K_4(0) differs from the identity by {diff:.3e}"));
    }
    let s = real_eigenvalues(&real_params(7, 0.0)?)?;
    if s.pairs.iter().any(|q| q.lambda != 1.0) {
        return fail("spectrum at rho=0 is not exactly all ones".into());
    }
    Ok("K(0) = I and its spectrum is exactly all ones".into())
}

fn check_determinant() -> Result<String> {
    let mut worst = 0.0_f64;
    for &(n, rho) in &[
        (2usize, Complex64::new(0.6, 0.0)),
        (5, Complex64::new(1.7, 0.0)),
        (6, Complex64::new(0.5, 0.5)),
    ] {
        let p = KmsParams::new(n, rho)?;
        let closed = kms_determinant(&p);
        let lu = lu_determinant(&build_kms(&p)?);
        let rel = (closed - lu).norm() / lu.norm().max(1.0);
        worst = worst.max(rel);
        if rel > 1e-10 {
            return fail(format!(
                "det mismatch at n={n}, rho={rho}: closed {closed}, LU {lu}"
            ));
        }
    }
    Ok(format!("closed-form determinant matches LU, worst rel {worst:.2e}"))
}

fn check_inverse() -> Result<String> {
    let p = real_params(6, 0.8)?;
    let k = build_kms(&p)?;
    let inv = kms_inverse(&p)?;
    let prod = inv.matmul(&k);
    let err = prod.sub(&DenseMatrix::identity(6)).inf_norm();
    if err > 1e-10 {
        return fail(format!("K^-1 K deviates from I by {err:.3e}"));
    }
    Ok(format!("tridiagonal inverse reproduces I within {err:.2e}"))
}

fn check_trace_product() -> Result<String> {
    let mut worst = 0.0_f64;
    for &n in &[4usize, 9] {
        for &rho in &[0.3, 1.4, -0.7] {
            let s = real_eigenvalues(&real_params(n, rho)?)?;
            let trace: f64 = s.pairs.iter().map(|q| q.lambda).sum();
            let product: f64 = s.pairs.iter().map(|q| q.lambda).product();
            let det = (1.0 - rho * rho).powi(n as i32 - 1);
            let te = (trace - n as f64).abs() / n as f64;
            let pe = (product - det).abs() / det.abs().max(1.0);
            worst = worst.max(te).max(pe);
            if te > 1e-9 || pe > 1e-9 {
                return fail(format!(
                    "trace/product identity broken at n={n} rho={rho}: trace err {te:.3e}, det err {pe:.3e}"
                ));
            }
        }
    }
    Ok(format!("trace = n and product = (1-rho^2)^(n-1), worst rel {worst:.2e}"))
}

fn check_residuals() -> Result<String> {
    let mut worst = 0.0_f64;
    for &n in &[8usize, 40] {
        for &rho in &[0.5, -1.3, 3.0] {
            let s = real_spectrum(&real_params(n, rho)?)?;
            let r = s.diagnostics.max_residual.unwrap_or(f64::INFINITY);
            worst = worst.max(r);
            if r > 1e-8 {
                return fail(format!("residual {r:.3e} at n={n} rho={rho}"));
            }
        }
    }
    Ok(format!("eigenpair residuals <= 1e-8 * |K|, worst {worst:.2e}"))
}

fn check_ordering() -> Result<String> {
    let dec = real_eigenvalues(&real_params(6, 0.5)?)?;
    for w in dec.pairs.windows(2) {
        if w[0].lambda <= w[1].lambda {
            return fail(format!(
                "spectrum at rho=0.5 not strictly decreasing: {} then {}",
                w[0].lambda, w[1].lambda
            ));
        }
    }
    if dec.pairs.last().unwrap().lambda <= 0.0 {
        return fail("smallest eigenvalue at rho=0.5 not positive".into());
    }
    let inv = real_eigenvalues(&real_params(6, 1.2)?)?;
    let l = &inv.pairs;
    for k in 1..5 {
        if l[k].lambda >= l[k + 1].lambda {
            return fail(format!(
                "rho=1.2 chain broken between k={k} and k={}",
                k + 1
            ));
        }
    }
    if l[5].lambda >= 0.0 || l[0].lambda <= 6.0 {
        return fail("rho=1.2 chain endpoints out of place".into());
    }
    Ok("ordering chains hold on both sides of rho = 1".into())
}

fn check_magnitude_vs_range() -> Result<String> {
    for &n in &[3usize, 6, 11] {
        for &rho in &[0.0, 0.4, 0.9, 1.1, (n as f64 + 1.0) / (n as f64 - 1.0), 2.5, -1.5] {
            let s = real_eigenvalues(&real_params(n, rho)?)?;
            for q in &s.pairs {
                let by_range = classify_eigenvalue(n, rho, q.lambda)?;
                let by_mag = classify_eigenvalue_by_magnitude(n, q.lambda);
                if by_range != by_mag {
                    return fail(format!(
                        "classifications disagree at n={n} rho={rho} lambda={}",
                        q.lambda
                    ));
                }
            }
        }
    }
    Ok("range membership and the |lambda| <= n criterion agree".into())
}

fn check_factor_product(fault_seed: Option<u64>) -> Result<String> {
    for &(n, rho) in &[
        (5usize, Complex64::new(0.7, 0.0)),
        (6, Complex64::new(0.4, 1.1)),
    ] {
        let s = poly_s(n, rho)?;
        let c = poly_c(n, rho)?;
        let p2n = poly_p2n(n, rho)?;
        let mut lhs = s.mul(&c);
        if let Some(seed) = fault_seed {
            // Deterministic single-coefficient perturbation for the negative
            // test of the harness.
            let idx = (seed as usize) % lhs.coeffs.len();
            lhs.coeffs[idx] += Complex64::new(1e-3, 0.0);
        }
        let rhs = p2n.mul(&Polynomial::new(vec![
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]));
        let len = lhs.coeffs.len().max(rhs.coeffs.len());
        let scale = lhs.max_coeff().max(1.0);
        for j in 0..len {
            let a = lhs.coeffs.get(j).copied().unwrap_or_default();
            let b = rhs.coeffs.get(j).copied().unwrap_or_default();
            if (a - b).norm() > 1e-10 * scale {
                return fail(format!(
                    "s*c and p2n*(z^2-1) differ in coefficient {j} at n={n}, rho={rho}"
                ));
            }
        }
    }
    Ok("s * c = p2n * (z^2 - 1) coefficientwise".into())
}

fn check_reciprocal_zeros() -> Result<String> {
    for &(n, rho) in &[
        (4usize, Complex64::new(0.3, 0.8)),
        (7, Complex64::new(1.5, 0.5)),
    ] {
        let zeros = p2n_zeros(&KmsParams::new(n, rho)?)?;
        for (z, _) in &zeros {
            let target = z.inv();
            let best = zeros
                .iter()
                .map(|(w, _)| (w - target).norm())
                .fold(f64::INFINITY, f64::min);
            if best > 1e-6 * (1.0 + target.norm()) {
                return fail(format!(
                    "zero {z} lacks an inverse partner at n={n}, rho={rho}"
                ));
            }
        }
    }
    Ok("zeros close under z -> 1/z".into())
}

fn check_type_counts() -> Result<String> {
    for n in 2..=9usize {
        let zeros = p2n_zeros(&KmsParams::new(n, Complex64::new(0.3, 0.8))?)?;
        let t1 = zeros.iter().filter(|(_, t)| *t == ZeroType::Type1).count();
        let t2 = zeros.iter().filter(|(_, t)| *t == ZeroType::Type2).count();
        if t1 != 2 * (n / 2) || t2 != 2 * n.div_ceil(2) {
            return fail(format!("type counts {t1}/{t2} wrong at n={n}"));
        }
    }
    Ok("2*floor(n/2) skew and 2*ceil(n/2) symmetric zeros".into())
}

fn check_vector_symmetry() -> Result<String> {
    let s = real_spectrum(&real_params(7, 0.6)?)?;
    for q in &s.pairs {
        let y = q.vector.as_ref().unwrap();
        let sign = match q.zero_type {
            ZeroType::Type2 => 1.0,
            ZeroType::Type1 => -1.0,
        };
        for j in 0..7 {
            if (y[j] - sign * y[6 - j]).abs() > 1e-9 {
                return fail(format!(
                    "vector k={} breaks its {} symmetry at entry {j}",
                    q.k,
                    match q.zero_type {
                        ZeroType::Type2 => "even",
                        ZeroType::Type1 => "odd",
                    }
                ));
            }
        }
    }
    Ok("eigenvectors alternate symmetric/antisymmetric with k".into())
}

fn check_negation() -> Result<String> {
    for &n in &[5usize, 6] {
        let plus = real_eigenvalues(&real_params(n, 0.85)?)?;
        let minus = real_eigenvalues(&real_params(n, -0.85)?)?;
        for (a, b) in plus.pairs.iter().zip(minus.pairs.iter()) {
            if (a.lambda - b.lambda).abs() > 1e-12 * (1.0 + a.lambda.abs()) {
                return fail(format!(
                    "negating rho moved eigenvalue k={} at n={n}",
                    a.k
                ));
            }
        }
    }
    Ok("spectrum is even in rho".into())
}

fn check_extraordinary_counts() -> Result<String> {
    for &(rho, expect) in &[(0.5, 0usize), (1.5, 2), (3.0, 2)] {
        let s = real_eigenvalues(&real_params(8, rho)?)?;
        let got = s
            .pairs
            .iter()
            .filter(|q| q.klass == EigenClass::Extraordinary)
            .count();
        if got != expect {
            return fail(format!(
                "expected {expect} extraordinary eigenvalues at rho={rho}, found {got}"
            ));
        }
    }
    let xi = 9.0 / 7.0;
    let s = real_eigenvalues(&real_params(8, xi)?)?;
    let got = s
        .pairs
        .iter()
        .filter(|q| q.klass == EigenClass::Extraordinary)
        .count();
    if got != 1 {
        return fail(format!("expected 1 extraordinary eigenvalue at xi_n, found {got}"));
    }
    Ok("extraordinary counts are 0, 1, or 2 by regime".into())
}

fn check_oracle_grid_real() -> Result<String> {
    let mut worst = 0.0_f64;
    for n in 2..=12usize {
        let xi = (n as f64 + 1.0) / (n as f64 - 1.0);
        for &rho in &[
            0.0, 0.1, 0.5, 0.9, 0.99, 1.0, 1.01, xi, 1.5, 2.0, 3.0, -0.7, -2.0,
        ] {
            let p = real_params(n, rho)?;
            let mut ours: Vec<f64> = real_eigenvalues(&p)?.pairs.iter().map(|q| q.lambda).collect();
            let mut reference: Vec<f64> = oracle_eig_kms(&p)?
                .eigenvalues
                .iter()
                .map(|z| z.re)
                .collect();
            ours.sort_by(f64::total_cmp);
            reference.sort_by(f64::total_cmp);
            for (a, b) in ours.iter().zip(reference.iter()) {
                let rel = (a - b).abs() / b.abs().max(1.0);
                worst = worst.max(rel);
                if rel > 1e-8 {
                    return fail(format!(
                        "solver vs oracle rel error {rel:.3e} at n={n}, rho={rho}"
                    ));
                }
            }
        }
    }
    Ok(format!("real grid matches the oracle, worst rel {worst:.2e}"))
}

fn check_oracle_grid_complex() -> Result<String> {
    let mut worst = 0.0_f64;
    let rhos = [
        Complex64::new(0.0, 0.5),
        Complex64::new(0.3, 0.8),
        Complex64::new(1.5, 0.5),
        Complex64::new(-1.0, 2.0),
        Complex64::new(0.0, 2.0 * std::f64::consts::SQRT_2),
    ];
    for n in 2..=10usize {
        for &rho in &rhos {
            let p = KmsParams::new(n, rho)?;
            let ours: Vec<Complex64> =
                complex_spectrum(&p)?.pairs.iter().map(|q| q.lambda).collect();
            let reference = oracle_eig(&build_kms(&p)?)?.eigenvalues;
            let scale = reference
                .iter()
                .map(|z| z.norm())
                .fold(1.0_f64, f64::max);
            let d = multiset_distance(&ours, &reference) / scale;
            worst = worst.max(d);
            if d > 1e-7 {
                return fail(format!(
                    "complex spectrum off the oracle by {d:.3e} at n={n}, rho={rho}"
                ));
            }
        }
    }
    Ok(format!("complex grid matches the oracle, worst {worst:.2e}"))
}

fn check_unit_circle() -> Result<String> {
    for &rho in &[0.0, 0.3, 0.9, -0.5] {
        let p = KmsParams::real(6, rho)?;
        let zeros = p2n_zeros(&p)?;
        if zeros.iter().any(|(z, _)| (z.norm() - 1.0).abs() > 1e-8) {
            return fail(format!("off-circle zero inside the unit interval, rho={rho}"));
        }
        if !cohn_unit_circle(&poly_p2n(6, Complex64::new(rho, 0.0))?)? {
            return fail(format!("circle test rejects rho={rho}"));
        }
    }
    for &rho in &[
        Complex64::new(1.5, 0.0),
        Complex64::new(-2.0, 0.0),
        Complex64::new(1.5, 0.5),
    ] {
        let zeros = p2n_zeros(&KmsParams::new(6, rho)?)?;
        if zeros.iter().all(|(z, _)| (z.norm() - 1.0).abs() <= 1e-8) {
            return fail(format!("all zeros on the circle at rho={rho}, expected strays"));
        }
        if cohn_unit_circle(&poly_p2n(6, rho)?)? {
            return fail(format!("circle test accepts rho={rho}"));
        }
    }
    Ok("zeros sit on the unit circle exactly for -1 < rho < 1".into())
}

fn check_continuity() -> Result<String> {
    let n = 10usize;
    let delta = 1e-6;
    let at_one = real_eigenvalues(&real_params(n, 1.0)?)?;
    for &rho in &[1.0 - delta, 1.0 + delta] {
        let s = real_eigenvalues(&real_params(n, rho)?)?;
        for (a, b) in s.pairs.iter().zip(at_one.pairs.iter()) {
            if (a.lambda - b.lambda).abs() > 1e-3 {
                return fail(format!(
                    "jump of {:.3e} across rho=1 at k={}",
                    (a.lambda - b.lambda).abs(),
                    a.k
                ));
            }
        }
    }
    let xi = (n as f64 + 1.0) / (n as f64 - 1.0);
    for &rho in &[xi - delta, xi + delta] {
        let s = real_eigenvalues(&real_params(n, rho)?)?;
        let l1 = s.pairs[1].lambda;
        if (l1 + n as f64).abs() > 1e-3 {
            return fail(format!(
                "lambda_1 should pass through -n at xi_n: got {l1} at rho={rho}"
            ));
        }
    }
    Ok("spectrum is continuous across rho = 1 and xi_n".into())
}

fn check_loci() -> Result<String> {
    let mut count = 0usize;
    for n in 3..=6usize {
        for locus in double_eigen_loci(n)? {
            count += 1;
            if locus.residual > 1e-7 {
                return fail(format!(
                    "locus {} at n={n} verifies poorly: residual {:.3e}",
                    locus.rho, locus.residual
                ));
            }
        }
    }
    Ok(format!("{count} double-eigenvalue loci re-verified"))
}

fn check_approx_claims() -> Result<String> {
    for m in 0..8 {
        let phase = 2.0 * std::f64::consts::PI * m as f64 / 8.0;
        let rho = 3.0 * Complex64::new(phase.cos(), phase.sin());
        let rep = large_eig_report(10, rho)?;
        if rep.max_rel_error > 6e-4 {
            return fail(format!(
                "large-eigenvalue magnitude error {:.3e} at phase {phase:.2}",
                rep.max_rel_error
            ));
        }
    }
    for (rho, bound) in [(3.0, 2.8e-2), (0.3, 2.1e-2)] {
        let rep = regula_falsi_report(10, rho)?;
        if rep.max_rel_error > 1.2 * bound {
            return fail(format!(
                "regula-falsi error {:.3e} at rho={rho} exceeds budget",
                rep.max_rel_error
            ));
        }
    }
    for rho in [0.98, 1.02] {
        let rep = near_one_report(10, rho)?;
        let a = rep.approx_values[0].re;
        let e = rep.exact_values[0].re;
        if ((a - e) / e).abs() > 3.5e-3 {
            return fail(format!("near-one dominant error too large at rho={rho}"));
        }
    }
    Ok("approximation error budgets hold".into())
}

fn check_class_predicates() -> Result<String> {
    let rhos = [
        Complex64::new(-1.5, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::new(0.9, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.2, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(1.0, 1.0),
    ];
    for n in 2..=5usize {
        for &rho in &rhos {
            let p = KmsParams::new(n, rho)?;
            let report = classify_params(&p);
            for class in MatrixClass::ALL {
                let brute = verify_class_bruteforce(&p, class)?;
                if report.get(class) != brute {
                    return fail(format!(
                        "predicate {} disagrees with brute force at n={n}, rho={rho}",
                        class.name()
                    ));
                }
            }
        }
    }
    Ok("closed-form class predicates match brute force".into())
}

fn fail(detail: String) -> Result<String> {
    Err(crate::error::KmsError::Verification { what: detail })
}
