//! Eigensolver for real rho. Every eigenvalue is pinned between
//! consecutive points of three angular grids and located by bisection on a
//! ratio of sines or cosines; at most two eigenvalues per matrix move onto
//! the hyperbolic axis and are found the same way in cosh/sinh ratios.
//! Eigenvectors are closed-form sinusoids (or decaying exponential
//! profiles) in the located angle, so the whole spectrum costs O(n) memory
//! and O(n log(1/eps)) time with no matrix ever formed.
//!
//! Negative rho is handled by solving at |rho| and applying the
//! alternating-sign similarity, which preserves eigenvalues.

use crate::chebpoly::ZeroType;
use crate::error::{KmsError, Result};
use crate::matrix::{kms_inf_norm, kms_matvec_real, symbol_range, KmsParams, LN_DBL_MAX};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The three angular grids that bracket the eigenvalue angles:
/// alpha_k = (k-1) pi / (n-1) for k = 1..n-1,
/// beta_k  = k pi / n         for k = 0..n-1,
/// gamma_k = (k+1) pi / (n+1) for k = 0..n-1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoints {
    pub n: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl GridPoints {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(KmsError::InvalidSize { n });
        }
        Ok(GridPoints {
            n,
            alpha: (1..n).map(|k| alpha_point(n, k)).collect(),
            beta: (0..n).map(|k| beta_point(n, k)).collect(),
            gamma: (0..n).map(|k| gamma_point(n, k)).collect(),
        })
    }

    /// alpha_k for 1 <= k <= n-1.
    pub fn alpha(&self, k: usize) -> f64 {
        self.alpha[k - 1]
    }

    pub fn beta(&self, k: usize) -> f64 {
        self.beta[k]
    }

    pub fn gamma(&self, k: usize) -> f64 {
        self.gamma[k]
    }
}

#[inline]
pub(crate) fn alpha_point(n: usize, k: usize) -> f64 {
    (k as f64 - 1.0) * PI / (n as f64 - 1.0)
}

#[inline]
pub(crate) fn beta_point(n: usize, k: usize) -> f64 {
    k as f64 * PI / n as f64
}

#[inline]
pub(crate) fn gamma_point(n: usize, k: usize) -> f64 {
    (k as f64 + 1.0) * PI / (n as f64 + 1.0)
}

fn xi_of(n: usize) -> f64 {
    (n as f64 + 1.0) / (n as f64 - 1.0)
}

/// Whether the located angle is a circular angle mu or a decay rate x
/// (standing for mu = i x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MuKind {
    Trigonometric,
    Hyperbolic,
}

/// A located eigenvalue angle together with the bracket that pinned it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuRoot {
    pub k: usize,
    pub kind: MuKind,
    pub value: f64,
    pub bracket: (f64, f64),
}

/// Ordinary eigenvalues lie in the closed symbol range, extraordinary ones
/// outside it; the latter exist only for |rho| > 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenClass {
    Ordinary,
    Extraordinary,
}

/// One eigenvalue of K_n(rho) with its bookkeeping. The vector, when
/// materialized, is max-entry normalized with first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub k: usize,
    pub lambda: f64,
    pub mu: MuRoot,
    pub vector: Option<Vec<f64>>,
    pub zero_type: ZeroType,
    pub klass: EigenClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// max_k ||K y - lambda y||_inf / ||K||_inf; absent without vectors or
    /// when the matrix entries overflow.
    pub max_residual: Option<f64>,
    /// |sum lambda - n|; absent when an eigenvalue overflowed.
    pub trace_error: Option<f64>,
    /// |prod lambda - det| / |det|; absent when not representable.
    pub det_error: Option<f64>,
    /// Largest relative gap between the sine-ratio and symbol formulas
    /// for lambda.
    pub max_formula_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub params: KmsParams,
    pub pairs: Vec<EigenPair>,
    pub diagnostics: Diagnostics,
}

/// cos(mu (n+1)/2) / cos(mu (n-1)/2), with the limit value 1 at mu = 0.
/// No pole guard: callers keep mu inside brackets that stay clear of the
/// denominator zeros.
fn trig_c_raw(n: usize, mu: f64) -> f64 {
    if mu == 0.0 {
        return 1.0;
    }
    let a = 0.5 * (n as f64 + 1.0);
    let b = 0.5 * (n as f64 - 1.0);
    (a * mu).cos() / (b * mu).cos()
}

/// sin(mu (n+1)/2) / sin(mu (n-1)/2), with the limit value xi_n at mu = 0.
fn trig_s_raw(n: usize, mu: f64) -> f64 {
    if mu == 0.0 {
        return xi_of(n);
    }
    let a = 0.5 * (n as f64 + 1.0);
    let b = 0.5 * (n as f64 - 1.0);
    (a * mu).sin() / (b * mu).sin()
}

/// cosh(x (n+1)/2) / cosh(x (n-1)/2) in the overflow-safe form
/// e^x (1 + e^(-(n+1)x)) / (1 + e^(-(n-1)x)).
fn hyp_c_raw(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    x.exp() * (1.0 + (-(nf + 1.0) * x).exp()) / (1.0 + (-(nf - 1.0) * x).exp())
}

/// sinh(x (n+1)/2) / sinh(x (n-1)/2), limit xi_n at x = 0.
fn hyp_s_raw(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return xi_of(n);
    }
    let nf = n as f64;
    x.exp() * (-(-(nf + 1.0) * x).exp_m1()) / (-(-(nf - 1.0) * x).exp_m1())
}

fn pole_guard(den: f64, what: &str) -> Result<()> {
    if den.abs() < 1e-14 {
        return Err(KmsError::Pole { what: what.to_string() });
    }
    Ok(())
}

/// Checked variant of the cosine ratio for external callers.
pub fn trig_c(n: usize, mu: f64) -> Result<f64> {
    if mu != 0.0 {
        pole_guard((0.5 * (n as f64 - 1.0) * mu).cos(), "cosine ratio denominator")?;
    }
    Ok(trig_c_raw(n, mu))
}

/// Checked variant of the sine ratio.
pub fn trig_s(n: usize, mu: f64) -> Result<f64> {
    if mu != 0.0 {
        pole_guard((0.5 * (n as f64 - 1.0) * mu).sin(), "sine ratio denominator")?;
    }
    Ok(trig_s_raw(n, mu))
}

/// Checked cosh ratio; the denominator never vanishes for real x.
pub fn hyp_c(n: usize, x: f64) -> Result<f64> {
    Ok(hyp_c_raw(n, x))
}

/// Checked sinh ratio, pole only at x = 0 where the limit value is returned.
pub fn hyp_s(n: usize, x: f64) -> Result<f64> {
    Ok(hyp_s_raw(n, x))
}

/// Bisection to floating-point exhaustion on f(x) = ratio(x) - rho.
/// flo and fhi must have opposite signs; as a safety net an endpoint whose
/// residual is below 1e-9 (1 + rho) is accepted as the root.
fn bisect(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    rho: f64,
    k: usize,
) -> Result<f64> {
    let mut flo = f(lo) - rho;
    let fhi = f(hi) - rho;
    let accept = 1e-9 * (1.0 + rho.abs());
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        if flo.abs() <= accept && flo.abs() <= fhi.abs() {
            return Ok(lo);
        }
        if fhi.abs() <= accept {
            return Ok(hi);
        }
        return Err(KmsError::BracketFailure { k, lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid) - rho;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Offset keeping the left end of a half-open bracket clear of the pole at
/// its boundary.
fn pole_offset(n: usize) -> f64 {
    (1e-9 * PI / n as f64).max(1e-12)
}

/// Locates the k-th eigenvalue angle of K_n(rho) for real rho >= 0.
///
/// Dispatch: k = 0 and k = 1 go hyperbolic once rho passes 1 and xi_n
/// respectively; all other k stay trigonometric, bracketed by
/// (alpha_k, beta_k] for rho >= 1 and [beta_k, gamma_k] for rho <= 1,
/// with the cosine ratio at even k and the sine ratio at odd k.
/// rho within 1e-14 of 0, 1 or xi_n short-circuits to the exact roots.
pub fn solve_mu(n: usize, rho: f64, k: usize) -> Result<MuRoot> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    if k >= n {
        return Err(KmsError::Domain { what: format!("root index {k} out of range for order {n}") });
    }
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(KmsError::Domain {
            what: format!("angle solver expects finite rho >= 0, got {rho}"),
        });
    }
    let xi = xi_of(n);
    let trig = |v: f64, bracket: (f64, f64)| MuRoot { k, kind: MuKind::Trigonometric, value: v, bracket };
    if rho <= 1e-14 {
        let g = gamma_point(n, k);
        return Ok(trig(g, (g, g)));
    }
    if (rho - 1.0).abs() <= 1e-14 {
        let b = beta_point(n, k);
        return Ok(trig(b, (b, b)));
    }
    if (rho - xi).abs() <= 1e-14 && k == 1 {
        return Ok(trig(0.0, (0.0, 0.0)));
    }

    let go_hyperbolic = (k == 0 && rho >= 1.0) || (k == 1 && rho >= xi);
    if go_hyperbolic {
        let f = |x: f64| {
            if k == 0 {
                hyp_c_raw(n, x)
            } else {
                hyp_s_raw(n, x)
            }
        };
        let mut hi = rho.ln().max(0.0) + 1.0;
        let mut guard = 0;
        while f(hi) < rho {
            hi *= 2.0;
            guard += 1;
            if guard > 64 {
                return Err(KmsError::BracketFailure { k, lo: 0.0, hi });
            }
        }
        let x = bisect(f, 0.0, hi, rho, k)?;
        return Ok(MuRoot { k, kind: MuKind::Hyperbolic, value: x, bracket: (0.0, hi) });
    }

    let use_c = k % 2 == 0;
    let f = |mu: f64| {
        if use_c {
            trig_c_raw(n, mu)
        } else {
            trig_s_raw(n, mu)
        }
    };
    let (lo, hi) = match k {
        0 => (0.0, gamma_point(n, 0)),
        1 => {
            if rho >= 1.0 {
                (0.0, beta_point(n, 1))
            } else {
                (beta_point(n, 1), gamma_point(n, 1))
            }
        }
        _ => {
            if rho >= 1.0 {
                let mut delta = pole_offset(n);
                let a = alpha_point(n, k);
                let b = beta_point(n, k);
                // back off toward the pole if the offset overshoots the root
                let mut tries = 0;
                while f(a + delta) < rho && tries < 40 {
                    delta *= 0.25;
                    tries += 1;
                }
                (a + delta, b)
            } else {
                (beta_point(n, k), gamma_point(n, k))
            }
        }
    };
    let v = bisect(f, lo, hi, rho, k)?;
    Ok(trig(v, (lo, hi)))
}

fn lambda_from_mu_impl(n: usize, rho: f64, root: &MuRoot) -> Result<(f64, f64)> {
    let nf = n as f64;
    let sign = if root.k % 2 == 0 { 1.0 } else { -1.0 };
    match root.kind {
        MuKind::Trigonometric => {
            let mu = root.value;
            if mu == 0.0 {
                return Ok((sign * nf, 0.0));
            }
            let lam = sign * (nf * mu).sin() / mu.sin();
            // the symbol at the same angle, in the cancellation-free form
            // (1-rho)^2 + 4 rho sin^2(mu/2) for the denominator
            let den = (1.0 - rho) * (1.0 - rho) + 4.0 * rho * (0.5 * mu).sin().powi(2);
            let cross = if den == 0.0 {
                lam
            } else {
                (1.0 - rho * rho) / den
            };
            let gap = (lam - cross).abs() / lam.abs().max(1.0);
            // the sine ratio loses absolute accuracy like eps n mu / |sin mu|
            // (argument rounding inside sin(n mu)), which dominates near
            // mu = pi at large n; the tolerance carries that conditioning
            let noise = 32.0 * f64::EPSILON * nf * mu / mu.sin().abs();
            let tol = (noise / lam.abs().max(1.0)).max(1e-9);
            if gap > tol {
                return Err(KmsError::Inconsistency {
                    what: format!(
                        "eigenvalue formulas disagree at k = {}, mu = {mu}: {lam} vs {cross}",
                        root.k
                    ),
                });
            }
            Ok((lam, gap))
        }
        MuKind::Hyperbolic => {
            let x = root.value;
            if x == 0.0 {
                return Ok((sign * nf, 0.0));
            }
            if (nf - 1.0) * x > LN_DBL_MAX {
                // the eigenvalue itself exceeds the double range
                return Ok((sign * f64::INFINITY, 0.0));
            }
            let lam = sign * ((nf - 1.0) * x).exp() * (-(-2.0 * nf * x).exp_m1())
                / (-(-2.0 * x).exp_m1());
            // symbol cross-check degrades when (1-rho)^2 and 4 rho sinh^2(x/2)
            // cancel (exactly the large-eigenvalue situation), so the
            // tolerance carries the conditioning of that subtraction
            let t1 = (1.0 - rho) * (1.0 - rho);
            let t2 = 4.0 * rho * (0.5 * x).sinh().powi(2);
            let den = t1 - t2;
            let noise = 32.0 * f64::EPSILON * (t1 + t2);
            if den.abs() <= 1e3 * noise {
                return Ok((lam, 0.0));
            }
            let cross = (1.0 - rho * rho) / den;
            let gap = (lam - cross).abs() / lam.abs().max(1.0);
            let tol = (4.0 * noise / den.abs()).max(1e-9);
            if gap > tol {
                return Err(KmsError::Inconsistency {
                    what: format!(
                        "eigenvalue formulas disagree at k = {}, x = {x}: {lam} vs {cross}",
                        root.k
                    ),
                });
            }
            Ok((lam, gap))
        }
    }
}

/// Eigenvalue from a located angle: (-1)^k sin(n mu)/sin(mu) on the circle,
/// (-1)^k sinh(n x)/sinh(x) on the hyperbolic axis (overflow-safe, +-inf
/// past the double range), cross-checked against the symbol value.
pub fn lambda_from_mu(n: usize, rho: f64, root: &MuRoot) -> Result<f64> {
    Ok(lambda_from_mu_impl(n, rho, root)?.0)
}

/// Closed-form eigenvector for a located angle: sin(mu (j - (n-1)/2)) at
/// odd k, cos at even k; hyperbolic angles give decaying exponential
/// profiles scaled to stay in range. Zero angles produce the limiting
/// all-ones (even k) or linear-ramp (odd k) vectors.
pub fn eigenvector_from_mu(n: usize, root: &MuRoot) -> Vec<f64> {
    let m = 0.5 * (n as f64 - 1.0);
    let odd = root.k % 2 == 1;
    let mut y: Vec<f64> = match root.kind {
        MuKind::Trigonometric => {
            let mu = root.value;
            if mu == 0.0 {
                (0..n).map(|j| if odd { j as f64 - m } else { 1.0 }).collect()
            } else {
                (0..n)
                    .map(|j| {
                        let arg = mu * (j as f64 - m);
                        if odd {
                            arg.sin()
                        } else {
                            arg.cos()
                        }
                    })
                    .collect()
            }
        }
        MuKind::Hyperbolic => {
            let x = root.value;
            if x == 0.0 {
                (0..n).map(|j| if odd { j as f64 - m } else { 1.0 }).collect()
            } else {
                (0..n)
                    .map(|j| {
                        let e1 = (-x * (n as f64 - 1.0 - j as f64)).exp();
                        let e2 = (-x * j as f64).exp();
                        if odd {
                            0.5 * (e1 - e2)
                        } else {
                            0.5 * (e1 + e2)
                        }
                    })
                    .collect()
            }
        }
    };
    normalize_vector(&mut y);
    y
}

/// Max-entry 1, first nonzero entry positive.
pub fn normalize_vector(y: &mut [f64]) {
    let max = y.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    if max == 0.0 {
        return;
    }
    for v in y.iter_mut() {
        *v /= max;
    }
    if let Some(first) = y.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            for v in y.iter_mut() {
                *v = -*v;
            }
        }
    }
}

/// Ordinary iff lambda lies in the closed symbol range (small relative
/// tolerance at the boundary). At rho = +-1 every eigenvalue is ordinary.
pub fn classify_eigenvalue(n: usize, rho: f64, lambda: f64) -> Result<EigenClass> {
    let _ = n;
    if rho == 1.0 || rho == -1.0 {
        return Ok(EigenClass::Ordinary);
    }
    if !lambda.is_finite() {
        return Ok(EigenClass::Extraordinary);
    }
    let range = symbol_range(rho)?;
    let tol = 1e-9 * (1.0 + range.lo.abs().max(range.hi.abs()));
    Ok(if range.contains(lambda, tol) {
        EigenClass::Ordinary
    } else {
        EigenClass::Extraordinary
    })
}

/// The equivalent classification through |lambda| <= n, kept separate so
/// tests can confirm the two criteria agree.
pub fn classify_eigenvalue_by_magnitude(n: usize, lambda: f64) -> EigenClass {
    let nf = n as f64;
    if !lambda.is_finite() {
        return EigenClass::Extraordinary;
    }
    if lambda.abs() <= nf * (1.0 + 1e-9) + 1e-9 {
        EigenClass::Ordinary
    } else {
        EigenClass::Extraordinary
    }
}

/// Full spectrum with eigenvectors and residual diagnostics. O(n^2); use
/// [`real_eigenvalues`] for large orders.
pub fn real_spectrum(p: &KmsParams) -> Result<SpectrumResult> {
    assemble(p, true)
}

/// Eigenvalues, angles and classes only: O(n) memory, no vectors.
pub fn real_eigenvalues(p: &KmsParams) -> Result<SpectrumResult> {
    assemble(p, false)
}

fn assemble(p: &KmsParams, with_vectors: bool) -> Result<SpectrumResult> {
    if !p.is_real() {
        return Err(KmsError::NotReal { rho: p.rho });
    }
    let n = p.n;
    let signed_rho = p.rho.re;
    let r = signed_rho.abs();
    let negate = signed_rho < 0.0;

    let mut pairs = Vec::with_capacity(n);
    let mut max_gap = 0.0_f64;
    let exactly_one = r <= 1e-14;
    let exactly_unit = (r - 1.0).abs() <= 1e-14;
    for k in 0..n {
        let root = solve_mu(n, r, k)?;
        let (lambda, gap) = if exactly_one {
            (1.0, 0.0)
        } else if exactly_unit {
            (if k == 0 { n as f64 } else { 0.0 }, 0.0)
        } else {
            lambda_from_mu_impl(n, r, &root)?
        };
        max_gap = max_gap.max(gap);
        let vector = if with_vectors {
            let mut y = eigenvector_from_mu(n, &root);
            if negate {
                crate::matrix::signature_flip(&mut y);
                normalize_vector(&mut y);
            }
            Some(y)
        } else {
            None
        };
        let mut zero_type = ZeroType::from_parity(k);
        if negate && n % 2 == 0 {
            zero_type = zero_type.flipped();
        }
        let klass = classify_eigenvalue(n, signed_rho, lambda)?;
        pairs.push(EigenPair { k, lambda, mu: root, vector, zero_type, klass });
    }

    let representable = r <= 1.0 || (n as f64 - 1.0) * r.ln() <= LN_DBL_MAX;
    let all_finite = pairs.iter().all(|p| p.lambda.is_finite());
    let trace_error = if all_finite {
        let sum: f64 = pairs.iter().map(|p| p.lambda).sum();
        Some((sum - n as f64).abs())
    } else {
        None
    };
    let det_error = if all_finite {
        let prod: f64 = pairs.iter().map(|p| p.lambda).product();
        let det = (1.0 - signed_rho * signed_rho).powi(n as i32 - 1);
        if prod.is_finite() && det.is_finite() {
            Some((prod - det).abs() / det.abs().max(1e-300))
        } else {
            None
        }
    } else {
        None
    };
    let max_residual = if with_vectors && representable && all_finite {
        let norm = kms_inf_norm(n, p.rho);
        let mut worst = 0.0_f64;
        for pair in &pairs {
            let y = pair.vector.as_ref().unwrap();
            let ky = kms_matvec_real(n, signed_rho, y);
            let r = ky
                .iter()
                .zip(y.iter())
                .map(|(a, b)| (a - pair.lambda * b).abs())
                .fold(0.0, f64::max);
            worst = worst.max(r / norm);
        }
        Some(worst)
    } else {
        None
    };

    Ok(SpectrumResult {
        params: *p,
        pairs,
        diagnostics: Diagnostics { max_residual, trace_error, det_error, max_formula_gap: max_gap },
    })
}
