//! Spectral solver for complex rho. Eigenvalues are pulled back from the
//! zeros of a palindromic polynomial of degree 2n that factors into two
//! self-inversive pieces, one per eigenvector symmetry class; each
//! reciprocal pair of zeros maps two-to-one onto an eigenvalue. Also here:
//! the parameter loci where an eigenvalue -n of multiplicity two appears,
//! and the distance from a point to the symbol curve.

use crate::chebpoly::{
    chebyshev_u_poly, classify_zero, eval_c, eval_s, poly_c, poly_s, zero_to_eigenvalue,
    Polynomial, ZeroType,
};
use crate::error::{KmsError, Result};
use crate::matrix::{build_kms, symbol_sigma, KmsParams};
use crate::oracle::{inverse_iteration, oracle_eig, oracle_poly_roots};
use crate::realspectrum::{real_spectrum, MuKind};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// One eigenvalue of K_n(rho) with the zero z (|z| >= 1) it came from,
/// the angle mu with z = e^(i mu), and the symmetry class of its vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexEigenPair {
    pub lambda: Complex64,
    pub z: Complex64,
    pub mu: Complex64,
    pub vector: Option<Vec<Complex64>>,
    pub zero_type: ZeroType,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpectrum {
    pub params: KmsParams,
    pub pairs: Vec<ComplexEigenPair>,
    /// Set when the polynomial route was abandoned for the dense oracle
    /// (parameter within 1e-14 of +-xi_n, where a triple zero degrades
    /// the root finder).
    pub used_oracle_fallback: bool,
}

fn deflation_check(rem: Complex64, rho: Complex64, at: &str) -> Result<()> {
    if rem.norm() > 1e-9 * (1.0 + rho.norm()) {
        return Err(KmsError::Inconsistency {
            what: format!("structural zero at z = {at} has residual {:.3e}", rem.norm()),
        });
    }
    Ok(())
}

/// All 2n zeros of the palindromic polynomial, tagged with the factor they
/// belong to. The structural zeros z = +-1 shared with the factor product
/// are deflated exactly; the rest come from the companion-matrix oracle
/// polished on the four-term originals.
pub fn p2n_zeros(p: &KmsParams) -> Result<Vec<(Complex64, ZeroType)>> {
    let n = p.n;
    let rho = p.rho;
    let s_factor = poly_s(n, rho)?;
    let c_factor = poly_c(n, rho)?;
    let (s_defl, c_defl) = if n % 2 == 0 {
        let (sq, srem) = s_factor.deflate_root(ONE);
        deflation_check(srem, rho, "1")?;
        let (cq, crem) = c_factor.deflate_root(-ONE);
        deflation_check(crem, rho, "-1")?;
        (sq, cq)
    } else {
        let (sq1, srem1) = s_factor.deflate_root(ONE);
        deflation_check(srem1, rho, "1")?;
        let (sq, srem2) = sq1.deflate_root(-ONE);
        deflation_check(srem2, rho, "-1")?;
        (sq, c_factor)
    };
    let mut out = Vec::with_capacity(2 * n);
    for (defl, ty) in [(s_defl, ZeroType::Type1), (c_defl, ZeroType::Type2)] {
        let roots = oracle_poly_roots(&defl)?;
        for mut z in roots {
            // two Newton steps on the exact four-term factor, kept only
            // when they reduce the residual
            for _ in 0..2 {
                let (v, d) = match ty {
                    ZeroType::Type1 => (eval_s(n, rho, z), eval_s_prime(n, rho, z)),
                    ZeroType::Type2 => (eval_c(n, rho, z), eval_c_prime(n, rho, z)),
                };
                if d.norm() == 0.0 {
                    break;
                }
                let step = z - v / d;
                let before = v.norm();
                let after = match ty {
                    ZeroType::Type1 => eval_s(n, rho, step).norm(),
                    ZeroType::Type2 => eval_c(n, rho, step).norm(),
                };
                if after < before {
                    z = step;
                } else {
                    break;
                }
            }
            out.push((z, ty));
        }
    }
    Ok(out)
}

fn eval_s_prime(n: usize, rho: Complex64, z: Complex64) -> Complex64 {
    let nf = n as f64;
    (nf + 1.0) * z.powu(n as u32) - rho * nf * z.powu(n as u32 - 1) + rho
}

fn eval_c_prime(n: usize, rho: Complex64, z: Complex64) -> Complex64 {
    let nf = n as f64;
    (nf + 1.0) * z.powu(n as u32) - rho * nf * z.powu(n as u32 - 1) - rho
}

/// Eigenvector from the zero z (with |z| >= 1), scaled so no entry
/// overflows: Type1 entries w^(n-1-j) - w^j, Type2 with a plus, w = 1/z.
/// Normalized to max modulus 1 with the first significant entry rotated
/// to the positive real axis.
fn vector_from_z(n: usize, z: Complex64, ty: ZeroType) -> Vec<Complex64> {
    let w = z.inv();
    let mut pow = vec![ONE; n];
    for j in 1..n {
        pow[j] = pow[j - 1] * w;
    }
    let mut y: Vec<Complex64> = (0..n)
        .map(|j| match ty {
            ZeroType::Type1 => pow[n - 1 - j] - pow[j],
            ZeroType::Type2 => pow[n - 1 - j] + pow[j],
        })
        .collect();
    normalize_complex(&mut y);
    y
}

pub(crate) fn normalize_complex(y: &mut [Complex64]) {
    let max = y.iter().fold(0.0_f64, |a, b| a.max(b.norm()));
    if max == 0.0 {
        return;
    }
    for v in y.iter_mut() {
        *v /= max;
    }
    if let Some(first) = y.iter().find(|v| v.norm() > 1e-12) {
        let phase = first / first.norm();
        let rot = phase.conj();
        for v in y.iter_mut() {
            *v *= rot;
        }
    }
}

/// Full spectrum of K_n(rho) for any parameter. Real parameters delegate
/// to the angle solver; within 1e-14 of +-xi_n the dense oracle takes over
/// (flagged on the result); otherwise the polynomial route runs. Pairs are
/// sorted by descending |lambda|, then by phase.
pub fn complex_spectrum(p: &KmsParams) -> Result<ComplexSpectrum> {
    let xi = p.xi();
    if (p.rho - Complex64::new(xi, 0.0)).norm() <= 1e-14
        || (p.rho + Complex64::new(xi, 0.0)).norm() <= 1e-14
    {
        return oracle_fallback(p);
    }
    if p.rho.im.abs() <= 1e-14 {
        return from_real(p);
    }

    let zeros = p2n_zeros(p)?;
    let mut pairs = Vec::with_capacity(p.n);
    // each factor is self-inversive, so its zeros close under z -> 1/z;
    // couple them greedily from the largest modulus down
    for ty in [ZeroType::Type1, ZeroType::Type2] {
        let mut pool: Vec<Complex64> =
            zeros.iter().filter(|(_, t)| *t == ty).map(|(z, _)| *z).collect();
        while !pool.is_empty() {
            let i = (0..pool.len())
                .max_by(|&a, &b| pool[a].norm().total_cmp(&pool[b].norm()))
                .unwrap();
            let z = pool.swap_remove(i);
            let target = z.inv();
            let j = match (0..pool.len())
                .min_by(|&a, &b| (pool[a] - target).norm().total_cmp(&(pool[b] - target).norm()))
            {
                Some(j) => j,
                None => {
                    return Err(KmsError::Inconsistency {
                        what: format!("zero {z} has no reciprocal partner left in its factor"),
                    })
                }
            };
            let partner = pool.swap_remove(j);
            if (partner - target).norm() > 1e-6 * (1.0 + target.norm()) {
                return Err(KmsError::Inconsistency {
                    what: format!(
                        "zeros do not pair into reciprocal couples: {z} against {partner}"
                    ),
                });
            }
            let lambda = zero_to_eigenvalue(p.rho, z)?;
            let mu = -I * z.ln();
            let vector = Some(vector_from_z(p.n, z, ty));
            pairs.push(ComplexEigenPair { lambda, z, mu, vector, zero_type: ty });
        }
    }
    sort_pairs(&mut pairs);
    Ok(ComplexSpectrum { params: *p, pairs, used_oracle_fallback: false })
}

fn sort_pairs(pairs: &mut [ComplexEigenPair]) {
    pairs.sort_by(|a, b| {
        let ka = (-a.lambda.norm(), a.lambda.arg());
        let kb = (-b.lambda.norm(), b.lambda.arg());
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
}

fn from_real(p: &KmsParams) -> Result<ComplexSpectrum> {
    let rp = KmsParams::real(p.n, p.rho.re)?;
    let s = real_spectrum(&rp)?;
    let r = rp.rho.re;
    let negate = r < 0.0;
    let mut pairs = Vec::with_capacity(p.n);
    for pair in &s.pairs {
        // reconstruct the zero from the located angle: e^(i mu) on the
        // circle, e^x on the hyperbolic axis, negated when rho < 0
        let mut z = match pair.mu.kind {
            MuKind::Trigonometric => Complex64::new(pair.mu.value.cos(), pair.mu.value.sin()),
            MuKind::Hyperbolic => Complex64::new(pair.mu.value.exp(), 0.0),
        };
        if negate {
            z = -z;
        }
        let mu = -I * z.ln();
        let vector =
            pair.vector.as_ref().map(|v| v.iter().map(|&x| Complex64::new(x, 0.0)).collect());
        pairs.push(ComplexEigenPair {
            lambda: Complex64::new(pair.lambda, 0.0),
            z,
            mu,
            vector,
            zero_type: pair.zero_type,
        });
    }
    sort_pairs(&mut pairs);
    Ok(ComplexSpectrum { params: *p, pairs, used_oracle_fallback: false })
}

fn oracle_fallback(p: &KmsParams) -> Result<ComplexSpectrum> {
    let k = build_kms(p)?;
    let spec = oracle_eig(&k)?;
    let mut pairs = Vec::with_capacity(p.n);
    for &lambda in &spec.eigenvalues {
        let (z, _) = crate::chebpoly::eigenvalue_to_zeros(p.rho, lambda)?;
        let ty = classify_zero(p.n, p.rho, z)?;
        let vector = inverse_iteration(&k, lambda).ok().map(|mut v| {
            normalize_complex(&mut v);
            v
        });
        pairs.push(ComplexEigenPair { lambda, z, mu: -I * z.ln(), vector, zero_type: ty });
    }
    sort_pairs(&mut pairs);
    Ok(ComplexSpectrum { params: *p, pairs, used_oracle_fallback: true })
}

/// A parameter where lambda = -n appears with multiplicity two, tagged by
/// the symmetry class whose zeros collide there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub rho: Complex64,
    /// Root of the shifted degree-reduced Chebyshev polynomial this locus
    /// came from.
    pub t0: Complex64,
    pub zero_type: ZeroType,
    /// Residual of the double-eigenvalue verification (characteristic
    /// polynomial and its derivative at -n, relative to coefficient scale).
    pub residual: f64,
}

fn cheb_t_half(m2: i64, t: Complex64) -> Complex64 {
    // T at index m2/2 through cos((m2/2) arccos t); both arccos branches
    // and 2 pi shifts flip numerator and denominator together in the
    // ratios below, so any branch serves
    (0.5 * m2 as f64 * t.acos()).cos()
}

/// All parameters rho with a double eigenvalue -n, from the critical
/// points of the Chebyshev recast of the degeneracy condition. Sorted by
/// real part then imaginary part; each point carries its verification
/// residual. The list is closed under negation and conjugation.
pub fn double_eigen_loci(n: usize) -> Result<Vec<LocusPoint>> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    let u = chebyshev_u_poly(n - 1);
    let nf = n as f64;
    let xi = Complex64::new((nf + 1.0) / (nf - 1.0), 0.0);
    let mut out = Vec::new();
    for ty in [ZeroType::Type1, ZeroType::Type2] {
        let shifted = match ty {
            ZeroType::Type1 => u.add(&Polynomial::constant(Complex64::new(-nf, 0.0))),
            ZeroType::Type2 => u.add(&Polynomial::constant(Complex64::new(nf, 0.0))),
        };
        let divided = match (ty, n % 2 == 0) {
            (ZeroType::Type1, true) => exact_deflate(&shifted, ONE)?,
            (ZeroType::Type1, false) => {
                exact_deflate(&exact_deflate(&shifted, ONE)?, -ONE)?
            }
            (ZeroType::Type2, true) => exact_deflate(&shifted, -ONE)?,
            (ZeroType::Type2, false) => shifted,
        };
        if divided.degree() == 0 {
            continue;
        }
        let roots = oracle_poly_roots(&divided)?;
        for t0 in roots {
            let num = cheb_t_half((n as i64) + 1, t0);
            let den = cheb_t_half((n as i64) - 1, t0);
            if den.norm() < 1e-12 {
                return Err(KmsError::Pole {
                    what: format!("locus ratio denominator vanished at t = {t0}"),
                });
            }
            let rho = match ty {
                ZeroType::Type1 => xi * num / den,
                ZeroType::Type2 => num / den,
            };
            let residual = verify_double_eigenvalue(n, rho)?;
            out.push(LocusPoint { rho, t0, zero_type: ty, residual });
        }
    }
    out.sort_by(|a, b| {
        (a.rho.re, a.rho.im)
            .partial_cmp(&(b.rho.re, b.rho.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

fn exact_deflate(p: &Polynomial, root: Complex64) -> Result<Polynomial> {
    let (q, rem) = p.deflate_root(root);
    if rem.norm() > 1e-9 * p.max_coeff().max(1.0) {
        return Err(KmsError::Inconsistency {
            what: format!("expected structural root {root} has residual {:.3e}", rem.norm()),
        });
    }
    Ok(q)
}

/// Residual of the claim that -n is a double eigenvalue at rho: the
/// characteristic polynomial and its derivative there, relative to the
/// evaluation scale of the coefficients.
pub fn verify_double_eigenvalue(n: usize, rho: Complex64) -> Result<f64> {
    let psi = crate::chebpoly::char_poly_recurrence(n, rho)?;
    let lam = Complex64::new(-(n as f64), 0.0);
    let scale: f64 = psi
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c.norm() * (n as f64).powi(j as i32))
        .sum();
    let dpsi = psi.derivative();
    let dscale: f64 = dpsi
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c.norm() * (n as f64).powi(j as i32))
        .sum();
    let r0 = psi.eval(lam).norm() / scale.max(1e-300);
    let r1 = dpsi.eval(lam).norm() / dscale.max(1e-300);
    Ok(r0.max(r1))
}

/// Distance from lambda to the closed symbol curve, by a dense angle scan
/// refined with golden-section search around the best grid point.
pub fn distance_to_symbol_range(rho: Complex64, lambda: Complex64) -> Result<f64> {
    let m = 4096;
    let value = |theta: f64| -> f64 {
        match symbol_sigma(rho, theta) {
            Ok(s) if s.is_finite() => (lambda - s).norm(),
            _ => f64::INFINITY,
        }
    };
    let mut best = f64::INFINITY;
    let mut best_theta = 0.0;
    for i in 0..m {
        let theta = 2.0 * PI * i as f64 / m as f64;
        let v = value(theta);
        if v < best {
            best = v;
            best_theta = theta;
        }
    }
    if !best.is_finite() {
        return Err(KmsError::Domain {
            what: "symbol curve evaluation failed on the whole angle grid".into(),
        });
    }
    let (mut a, mut b) = (best_theta - 2.0 * PI / m as f64, best_theta + 2.0 * PI / m as f64);
    let phi = 0.5 * (3.0 - 5.0_f64.sqrt());
    let (mut x1, mut x2) = (a + phi * (b - a), b - phi * (b - a));
    let (mut f1, mut f2) = (value(x1), value(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + phi * (b - a);
            f1 = value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - phi * (b - a);
            f2 = value(x2);
        }
    }
    Ok(best.min(f1).min(f2))
}

/// The eigenpair of K_n(conj(rho)) obtained by conjugating everything.
pub fn conjugate_pair(pair: &ComplexEigenPair) -> ComplexEigenPair {
    ComplexEigenPair {
        lambda: pair.lambda.conj(),
        z: pair.z.conj(),
        mu: -I * pair.z.conj().ln(),
        vector: pair.vector.as_ref().map(|v| {
            let mut y: Vec<Complex64> = v.iter().map(|x| x.conj()).collect();
            normalize_complex(&mut y);
            y
        }),
        zero_type: pair.zero_type,
    }
}

/// The eigenpair of K_n(-rho): same eigenvalue, zero negated, vector with
/// alternating signs, symmetry class flipped exactly when n is even.
pub fn negate_pair(pair: &ComplexEigenPair, n: usize) -> ComplexEigenPair {
    let z = -pair.z;
    let mut zero_type = pair.zero_type;
    if n % 2 == 0 {
        zero_type = zero_type.flipped();
    }
    ComplexEigenPair {
        lambda: pair.lambda,
        z,
        mu: -I * z.ln(),
        vector: pair.vector.as_ref().map(|v| {
            let mut y: Vec<Complex64> = v.clone();
            crate::matrix::signature_flip(&mut y);
            normalize_complex(&mut y);
            y
        }),
        zero_type,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{kms_inf_norm, kms_matvec};
    use crate::oracle::oracle_eig_kms;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_lams(s: &ComplexSpectrum) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = s.pairs.iter().map(|p| p.lambda).collect();
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    use crate::oracle::multiset_distance;

    #[test]
    fn zero_counts_and_reciprocal_closure() {
        for n in [2usize, 3, 6, 9] {
            let p = KmsParams::new(n, c(0.3, 0.8)).unwrap();
            let zeros = p2n_zeros(&p).unwrap();
            assert_eq!(zeros.len(), 2 * n);
            let t1 = zeros.iter().filter(|(_, t)| *t == ZeroType::Type1).count();
            let t2 = zeros.iter().filter(|(_, t)| *t == ZeroType::Type2).count();
            assert_eq!(t1, 2 * (n / 2), "n={n}");
            assert_eq!(t2, 2 * n.div_ceil(2), "n={n}");
            for (z, _) in &zeros {
                let has_partner = zeros
                    .iter()
                    .any(|(w, _)| (z * w - ONE).norm() <= 1e-6 * (1.0 + z.norm() * w.norm()));
                assert!(has_partner, "n={n}: zero {z} lacks a reciprocal partner");
            }
        }
    }

    #[test]
    fn zeros_satisfy_their_factor() {
        let p = KmsParams::new(5, c(-0.7, 0.2)).unwrap();
        for (z, ty) in p2n_zeros(&p).unwrap() {
            let v = match ty {
                ZeroType::Type1 => eval_s(5, p.rho, z),
                ZeroType::Type2 => eval_c(5, p.rho, z),
            };
            let scale = (1.0 + p.rho.norm()) * (1.0 + z.norm()).powi(6);
            assert!(v.norm() <= 1e-10 * scale, "type {:?} zero {z}: {:.3e}", ty, v.norm());
        }
    }

    #[test]
    fn matches_oracle_on_complex_grid() {
        for &rho in &[c(0.3, 0.8), c(0.0, 1.5), c(-0.7, 0.2), c(2.0, 1.0)] {
            for n in [2usize, 3, 4, 5, 6] {
                let p = KmsParams::new(n, rho).unwrap();
                let s = complex_spectrum(&p).unwrap();
                assert!(!s.used_oracle_fallback);
                let ours = sorted_lams(&s);
                let oracle = oracle_eig_kms(&p).unwrap();
                let scale = oracle.eigenvalues.iter().map(|l| l.norm()).fold(1.0, f64::max);
                let d = multiset_distance(&ours, &oracle.eigenvalues);
                assert!(d <= 1e-7 * scale, "n={n} rho={rho}: distance {d:.3e}");
            }
        }
    }

    #[test]
    fn trace_and_determinant_identities() {
        for &rho in &[c(0.4, 0.6), c(1.2, -0.5)] {
            let n = 7;
            let p = KmsParams::new(n, rho).unwrap();
            let s = complex_spectrum(&p).unwrap();
            let sum: Complex64 = s.pairs.iter().map(|q| q.lambda).sum();
            assert!((sum - c(n as f64, 0.0)).norm() <= 1e-9 * n as f64, "rho={rho}: trace {sum}");
            let prod: Complex64 = s.pairs.iter().map(|q| q.lambda).product();
            let det = (ONE - rho * rho).powu(n as u32 - 1);
            assert!((prod - det).norm() <= 1e-8 * det.norm(), "rho={rho}");
        }
    }

    #[test]
    fn vectors_are_eigenvectors_with_right_symmetry() {
        let n = 8;
        let p = KmsParams::new(n, c(0.6, 0.9)).unwrap();
        let s = complex_spectrum(&p).unwrap();
        let norm = kms_inf_norm(n, p.rho);
        for pair in &s.pairs {
            let y = pair.vector.as_ref().unwrap();
            let ky = kms_matvec(n, p.rho, y);
            let resid = ky
                .iter()
                .zip(y.iter())
                .map(|(a, b)| (a - pair.lambda * b).norm())
                .fold(0.0, f64::max);
            assert!(resid <= 1e-8 * norm, "lambda={}: residual {resid:.3e}", pair.lambda);
            for j in 0..n {
                let (a, b) = (y[j], y[n - 1 - j]);
                match pair.zero_type {
                    ZeroType::Type1 => assert!((a + b).norm() < 1e-8),
                    ZeroType::Type2 => assert!((a - b).norm() < 1e-8),
                }
            }
            // |z| >= 1 and z = e^(i mu) hold for every reported pair
            assert!(pair.z.norm() >= 1.0 - 1e-9);
            assert!(((I * pair.mu).exp() - pair.z).norm() <= 1e-9 * pair.z.norm());
        }
    }

    #[test]
    fn real_parameters_delegate() {
        let p = KmsParams::real(5, 0.7).unwrap();
        let s = complex_spectrum(&p).unwrap();
        let rs = real_spectrum(&p).unwrap();
        let mut ours = sorted_lams(&s);
        let mut reals: Vec<f64> = rs.pairs.iter().map(|q| q.lambda).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in ours.iter_mut().zip(reals.iter()) {
            assert!((a.re - b).abs() < 1e-12 && a.im == 0.0);
        }
        // ordinary zeros sit on the unit circle
        for pair in &s.pairs {
            assert!((pair.z.norm() - 1.0).abs() <= 1e-9);
        }
        // negative real parameter keeps eigenvalues, flips classes at even n
        let p6p = KmsParams::real(6, 0.7).unwrap();
        let p6n = KmsParams::real(6, -0.7).unwrap();
        let sp = complex_spectrum(&p6p).unwrap();
        let sn = complex_spectrum(&p6n).unwrap();
        let (a, b) = (sorted_lams(&sp), sorted_lams(&sn));
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-10);
        }
        let t1p = sp.pairs.iter().filter(|q| q.zero_type == ZeroType::Type1).count();
        let t1n = sn.pairs.iter().filter(|q| q.zero_type == ZeroType::Type1).count();
        assert_eq!(t1p + t1n, 6, "type counts swap under negation at even order");
    }

    #[test]
    fn degenerate_parameters_through_delegation() {
        let s = complex_spectrum(&KmsParams::real(4, 0.0).unwrap()).unwrap();
        for pair in &s.pairs {
            assert!((pair.lambda - ONE).norm() == 0.0);
        }
        let s = complex_spectrum(&KmsParams::real(4, 1.0).unwrap()).unwrap();
        let lams = sorted_lams(&s);
        assert_eq!(lams[3], c(4.0, 0.0));
        assert!(lams[..3].iter().all(|l| l.norm() == 0.0));
    }

    #[test]
    fn xi_parameter_takes_oracle_path() {
        let n = 5;
        let p = KmsParams::real(n, 1.5).unwrap();
        let s = complex_spectrum(&p).unwrap();
        assert!(s.used_oracle_fallback);
        let closest = s
            .pairs
            .iter()
            .map(|q| (q.lambda - c(-5.0, 0.0)).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(closest <= 1e-7, "lambda = -n missing at rho = xi_n: {closest:.3e}");
        let p = KmsParams::new(n, c(0.3, 0.8)).unwrap();
        assert!(!complex_spectrum(&p).unwrap().used_oracle_fallback);
    }

    #[test]
    fn loci_order_three_closed_form() {
        let loci = double_eigen_loci(3).unwrap();
        assert_eq!(loci.len(), 2);
        let expect = 2.0 * 2.0_f64.sqrt();
        for l in &loci {
            assert_eq!(l.zero_type, ZeroType::Type2);
            assert!((l.rho.re).abs() < 1e-9);
            assert!((l.rho.im.abs() - expect).abs() < 1e-9, "got {}", l.rho);
            assert!(l.residual <= 1e-7);
        }
        assert!((loci[0].rho + loci[1].rho).norm() < 1e-9, "loci close under negation");
    }

    #[test]
    fn loci_order_four_contains_known_point() {
        let loci = double_eigen_loci(4).unwrap();
        let target = c(-1.0, 2.0);
        let closest = loci.iter().map(|l| (l.rho - target).norm()).fold(f64::INFINITY, f64::min);
        assert!(closest <= 1e-8, "expected a locus at -1+2i, nearest {closest:.3e}");
        for l in &loci {
            assert!(l.residual <= 1e-7, "rho={}: residual {:.3e}", l.rho, l.residual);
        }
    }

    #[test]
    fn loci_produce_double_eigenvalues() {
        for n in [3usize, 4, 5, 6] {
            for l in double_eigen_loci(n).unwrap() {
                let p = KmsParams::new(n, l.rho).unwrap();
                let eig = oracle_eig_kms(&p).unwrap();
                let near = eig
                    .eigenvalues
                    .iter()
                    .filter(|lam| (*lam - c(-(n as f64), 0.0)).norm() <= 1e-5 * n as f64)
                    .count();
                assert_eq!(near, 2, "n={n} rho={}: {} eigenvalues near -n", l.rho, near);
            }
        }
    }

    #[test]
    fn symbol_distance_on_and_off_curve() {
        let rho = c(0.4, 0.3);
        let on = symbol_sigma(rho, 1.234).unwrap();
        assert!(distance_to_symbol_range(rho, on).unwrap() <= 1e-10);
        let off = on + c(0.5, 0.0);
        let d = distance_to_symbol_range(rho, off).unwrap();
        assert!(d > 0.01 && d <= 0.5 + 1e-12);
    }

    #[test]
    fn transforms_match_direct_solves() {
        let n = 5;
        let rho = c(0.5, 0.7);
        let s = complex_spectrum(&KmsParams::new(n, rho).unwrap()).unwrap();
        let sc = complex_spectrum(&KmsParams::new(n, rho.conj()).unwrap()).unwrap();
        let sn = complex_spectrum(&KmsParams::new(n, -rho).unwrap()).unwrap();
        for pair in &s.pairs {
            let cp = conjugate_pair(pair);
            let best = sc.pairs.iter().map(|q| (q.lambda - cp.lambda).norm()).fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-8, "conjugate eigenvalue {} not found", cp.lambda);
            let np = negate_pair(pair, n);
            let best = sn
                .pairs
                .iter()
                .filter(|q| q.zero_type == np.zero_type)
                .map(|q| (q.lambda - np.lambda).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-8, "negated eigenvalue {} not found with type", np.lambda);
        }
        // negation flips the symmetry class at even order
        let pair = &complex_spectrum(&KmsParams::new(4, rho).unwrap()).unwrap().pairs[0];
        assert_eq!(negate_pair(pair, 4).zero_type, pair.zero_type.flipped());
        assert_eq!(negate_pair(pair, 5).zero_type, pair.zero_type);
    }

    #[test]
    fn known_double_point_order_four() {
        // K_4(-1+2i) carries -4 twice
        let p = KmsParams::new(4, c(-1.0, 2.0)).unwrap();
        let eig = oracle_eig_kms(&p).unwrap();
        let near = eig
            .eigenvalues
            .iter()
            .filter(|lam| (*lam - c(-4.0, 0.0)).norm() <= 1e-5)
            .count();
        assert_eq!(near, 2);
    }
}
