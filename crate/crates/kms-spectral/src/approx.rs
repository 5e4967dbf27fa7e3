//! Closed-form eigenvalue approximations: exponentially large eigenpairs for
//! |rho| > 1, regula-falsi first guesses for the angle equation, and the
//! linearization around rho = 1, each with measured-error reporting against
//! the exact solvers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexspectrum::{complex_spectrum, normalize_complex};
use crate::error::{KmsError, Result};
use crate::matrix::{KmsParams, LN_DBL_MAX};
use crate::realspectrum::{alpha_point, beta_point, gamma_point, real_eigenvalues};

/// Approximate values next to the exact ones they stand for, plus the worst
/// relative error. Entries whose exact value has modulus below 1e-12 are
/// compared absolutely instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub approx_values: Vec<Complex64>,
    pub exact_values: Vec<Complex64>,
    pub max_rel_error: f64,
}

impl ApproxReport {
    pub fn new(approx_values: Vec<Complex64>, exact_values: Vec<Complex64>) -> Self {
        assert_eq!(
            approx_values.len(),
            exact_values.len(),
            "approx/exact sequences must have equal length"
        );
        let max_rel_error = approx_values
            .iter()
            .zip(exact_values.iter())
            .map(|(a, e)| {
                let diff = (a - e).norm();
                if e.norm() < 1e-12 {
                    diff
                } else {
                    diff / e.norm()
                }
            })
            .fold(0.0_f64, f64::max);
        ApproxReport {
            approx_values,
            exact_values,
            max_rel_error,
        }
    }
}

/// Large-|rho| approximation of the two exponentially large eigenpairs:
/// lambda_0 ~ +rho^(n+1)/(rho^2-1) with the symmetric vector
/// y0_j = rho^((n-1)/2-j) + rho^(j-(n-1)/2), and lambda_1 ~ -rho^(n+1)/(rho^2-1)
/// with the antisymmetric vector (minus sign). Vectors are normalized to max
/// modulus 1. Requires |rho| > 1; errors out when rho^(n+1) overflows f64.
pub fn large_eigs(
    n: usize,
    rho: Complex64,
) -> Result<(Complex64, Complex64, Vec<Complex64>, Vec<Complex64>)> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    if !rho.re.is_finite() || !rho.im.is_finite() {
        return Err(KmsError::Domain {
            what: "rho must be finite".into(),
        });
    }
    let r = rho.norm();
    if r <= 1.0 {
        return Err(KmsError::Domain {
            what: format!("large-eigenvalue approximation needs |rho| > 1, got |rho| = {r}"),
        });
    }
    if (n as f64 + 1.0) * r.ln() > LN_DBL_MAX {
        return Err(KmsError::Overflow {
            what: format!("rho^(n+1) exceeds f64 range at n = {n}, |rho| = {r}"),
        });
    }
    let lambda0 = rho.powu(n as u32 + 1) / (rho * rho - 1.0);
    let lambda1 = -lambda0;
    let half = (n as f64 - 1.0) / 2.0;
    let mut y0 = Vec::with_capacity(n);
    let mut y1 = Vec::with_capacity(n);
    for j in 0..n {
        let up = rho.powf(half - j as f64);
        let down = up.inv();
        y0.push(up + down);
        y1.push(up - down);
    }
    normalize_complex(&mut y0);
    normalize_complex(&mut y1);
    Ok((lambda0, lambda1, y0, y1))
}

/// Regula-falsi first approximation of the angle mu_k: linear interpolation
/// mu_k ~ beta_k rho + gamma_k (1-rho) on 0 <= rho <= 1, and
/// mu_k ~ (beta_k - alpha_k)/rho + alpha_k on rho >= 1 for k >= 2. The
/// hyperbolic branches behind k = 0, 1 at rho > 1 admit no such formula,
/// so those arguments are a domain error.
pub fn regula_falsi_mu(n: usize, rho: f64, k: usize) -> Result<f64> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    if k >= n {
        return Err(KmsError::Domain {
            what: format!("index k = {k} out of range for n = {n}"),
        });
    }
    if !rho.is_finite() || rho < 0.0 {
        return Err(KmsError::Domain {
            what: format!("regula falsi needs finite rho >= 0, got {rho}"),
        });
    }
    if rho <= 1.0 {
        Ok(beta_point(n, k) * rho + gamma_point(n, k) * (1.0 - rho))
    } else if k >= 2 {
        Ok((beta_point(n, k) - alpha_point(n, k)) / rho + alpha_point(n, k))
    } else {
        Err(KmsError::Domain {
            what: format!("no interpolation formula for k = {k} at rho = {rho} > 1"),
        })
    }
}

/// Eigenvalue from the regula-falsi angle via the symbol form
/// (1-rho^2)/(1-2 rho cos(mu)+rho^2), which is insensitive to the O(1/n)
/// error carried by the interpolated angle. The lone indeterminate point
/// (rho = 1, mu = 0) takes its limiting value n.
pub fn regula_falsi_lambda(n: usize, rho: f64, k: usize) -> Result<f64> {
    let mu = regula_falsi_mu(n, rho, k)?;
    let den = (1.0 - rho) * (1.0 - rho) + 2.0 * rho * (1.0 - mu.cos());
    if den == 0.0 {
        return Ok(n as f64);
    }
    Ok((1.0 - rho * rho) / den)
}

/// Linearization around rho = 1: lambda_0 ~ n + (n^2-1)/3 (rho-1) for the
/// dominant eigenvalue and lambda_k ~ (1-rho)/(1-cos(k pi/n)) for the rest.
/// Returned in index order k = 0..n-1. Exact at rho = 1; the caller judges
/// how far from 1 the formulas stay useful.
pub fn near_one_eigs(n: usize, rho: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    if !rho.is_finite() {
        return Err(KmsError::Domain {
            what: format!("near-one expansion needs finite rho, got {rho}"),
        });
    }
    let nf = n as f64;
    let mut out = Vec::with_capacity(n);
    out.push(nf + (nf * nf - 1.0) / 3.0 * (rho - 1.0));
    for k in 1..n {
        out.push((1.0 - rho) / (1.0 - (k as f64 * std::f64::consts::PI / nf).cos()));
    }
    Ok(out)
}

/// Error report for the large-|rho| eigenvalue magnitudes against the two
/// largest-|lambda| exact eigenvalues. Entries are the magnitudes, matching
/// the formulas' accuracy claim, which concerns |lambda| only.
pub fn large_eig_report(n: usize, rho: Complex64) -> Result<ApproxReport> {
    let (lambda0, lambda1, _, _) = large_eigs(n, rho)?;
    let spectrum = complex_spectrum(&KmsParams::new(n, rho)?)?;
    if spectrum.pairs.len() < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    let e0 = spectrum.pairs[0].lambda;
    let e1 = spectrum.pairs[1].lambda;
    // Pairs are sorted by descending |lambda|; match each approximation to the
    // nearer of the two so a phase flip in the sort cannot cross the pairs.
    let (e0, e1) = if (lambda0 - e0).norm() <= (lambda0 - e1).norm() {
        (e0, e1)
    } else {
        (e1, e0)
    };
    Ok(ApproxReport::new(
        vec![
            Complex64::new(lambda0.norm(), 0.0),
            Complex64::new(lambda1.norm(), 0.0),
        ],
        vec![
            Complex64::new(e0.norm(), 0.0),
            Complex64::new(e1.norm(), 0.0),
        ],
    ))
}

/// Error report for the regula-falsi eigenvalue approximations over every
/// index the interpolation covers: all k for rho <= 1, k >= 2 for rho > 1.
pub fn regula_falsi_report(n: usize, rho: f64) -> Result<ApproxReport> {
    let params = KmsParams::real(n, rho)?;
    let exact = real_eigenvalues(&params)?;
    let first = if rho <= 1.0 { 0 } else { 2 };
    let mut approx_values = Vec::with_capacity(n - first);
    let mut exact_values = Vec::with_capacity(n - first);
    for k in first..n {
        approx_values.push(Complex64::new(regula_falsi_lambda(n, rho, k)?, 0.0));
        exact_values.push(Complex64::new(exact.pairs[k].lambda, 0.0));
    }
    Ok(ApproxReport::new(approx_values, exact_values))
}

/// Error report for the near-one expansion over all n eigenvalues, matched
/// by index.
pub fn near_one_report(n: usize, rho: f64) -> Result<ApproxReport> {
    let params = KmsParams::real(n, rho)?;
    let exact = real_eigenvalues(&params)?;
    let approx = near_one_eigs(n, rho)?;
    Ok(ApproxReport::new(
        approx.iter().map(|x| Complex64::new(*x, 0.0)).collect(),
        exact
            .pairs
            .iter()
            .map(|p| Complex64::new(p.lambda, 0.0))
            .collect(),
    ))
}
