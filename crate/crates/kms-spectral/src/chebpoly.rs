//! Polynomial layer: the characteristic polynomial of K_n(rho), the
//! palindromic polynomial p_2n whose zeros encode the spectrum, its two
//! symmetry factors s and c, Chebyshev evaluation, and the rational maps
//! between zeros and eigenvalues.
//!
//! The zero <-> eigenvalue correspondence is two-to-one: z and 1/z map to
//! the same eigenvalue lambda = z(1-rho^2)/((z-rho)(1-rho*z)).

use crate::error::{KmsError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Dense univariate polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.norm_sqr() == 0.0) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::constant(ZERO);
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        Polynomial::new(out)
    }

    /// Synthetic division by (z - r). Returns the quotient and the
    /// remainder, which equals the value at r.
    pub fn deflate_root(&self, r: Complex64) -> (Polynomial, Complex64) {
        let m = self.degree();
        if m == 0 {
            return (Polynomial::constant(ZERO), self.coeffs[0]);
        }
        let mut q = vec![ZERO; m];
        let mut carry = ZERO;
        for i in (0..=m).rev() {
            let v = self.coeffs[i] + carry;
            if i == 0 {
                return (Polynomial::new(q), v);
            }
            q[i - 1] = v;
            carry = v * r;
        }
        unreachable!()
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Second-kind Chebyshev value U_k(t) by the three-term recurrence,
/// valid for complex t.
pub fn chebyshev_u(k: usize, t: Complex64) -> Complex64 {
    let mut prev = ONE;
    let mut cur = 2.0 * t;
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// U_k as a coefficient polynomial (integer coefficients).
pub fn chebyshev_u_poly(k: usize) -> Polynomial {
    let mut prev = Polynomial::from_real(&[1.0]);
    let mut cur = Polynomial::from_real(&[0.0, 2.0]);
    if k == 0 {
        return prev;
    }
    let two_t = Polynomial::from_real(&[0.0, 2.0]);
    for _ in 1..k {
        let next = two_t.mul(&cur).add(&prev.scale(-ONE));
        prev = cur;
        cur = next;
    }
    cur
}

/// Characteristic polynomial det(lambda I - K_n(rho)) in lambda, built by
/// the three-term recurrence
///   psi_m = (rho^2 - 1 + lambda (1 + rho^2)) psi_{m-1} - (lambda rho)^2 psi_{m-2}
/// with psi_0 = 1, psi_1 = lambda - 1. Monic of degree n.
pub fn char_poly_recurrence(n: usize, rho: Complex64) -> Result<Polynomial> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    let rho2 = rho * rho;
    // rho^2 - 1 + lambda (1 + rho^2)
    let lin = Polynomial::new(vec![rho2 - ONE, ONE + rho2]);
    // -(lambda rho)^2
    let quad = Polynomial::new(vec![ZERO, ZERO, -rho2]);
    let mut prev = Polynomial::constant(ONE);
    let mut cur = Polynomial::new(vec![-ONE, ONE]);
    for _ in 2..=n {
        let next = lin.mul(&cur).add(&quad.mul(&prev));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn char_poly_eval_by_recurrence(n: usize, rho: Complex64, lambda: Complex64) -> Complex64 {
    let rho2 = rho * rho;
    let lin = rho2 - ONE + lambda * (ONE + rho2);
    let quad = (lambda * rho) * (lambda * rho);
    let mut prev = ONE;
    let mut cur = lambda - ONE;
    for _ in 2..=n {
        let next = lin * cur - quad * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Scalar value of the characteristic polynomial. Uses the Chebyshev
/// closed form
///   psi_n = (lambda rho)^n / (1 - rho^2) [U_n(tau) - 2 rho U_{n-1}(tau) + rho^2 U_{n-2}(tau)],
///   tau = (rho^2 (lambda + 1) + lambda - 1) / (2 lambda rho),
/// falling back to the recurrence where the closed form degenerates
/// (rho near 0 or +-1, lambda near 0).
pub fn char_poly_eval(n: usize, rho: Complex64, lambda: Complex64) -> Result<Complex64> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    let one_minus_rho2 = ONE - rho * rho;
    if rho.norm() < 1e-12 || one_minus_rho2.norm() < 1e-12 || lambda.norm() < 1e-12 {
        return Ok(char_poly_eval_by_recurrence(n, rho, lambda));
    }
    let tau = (rho * rho * (lambda + ONE) + lambda - ONE) / (2.0 * lambda * rho);
    let bracket =
        chebyshev_u(n, tau) - 2.0 * rho * chebyshev_u(n - 1, tau) + rho * rho * chebyshev_u(n - 2, tau);
    Ok((lambda * rho).powu(n as u32) / one_minus_rho2 * bracket)
}

/// The palindromic zero polynomial of degree 2n:
/// z^2n + (1+rho^2)(z^2 + z^4 + ... + z^(2n-2)) - 2 rho (z + z^3 + ... + z^(2n-1)) + 1.
pub fn poly_p2n(n: usize, rho: Complex64) -> Result<Polynomial> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    let mut coeffs = vec![ZERO; 2 * n + 1];
    coeffs[0] = ONE;
    coeffs[2 * n] = ONE;
    for j in 1..2 * n {
        coeffs[j] = if j % 2 == 1 { -2.0 * rho } else { ONE + rho * rho };
    }
    Ok(Polynomial::new(coeffs))
}

/// Factor carrying the skew-symmetric eigenvectors: z^(n+1) - rho z^n + rho z - 1.
pub fn poly_s(n: usize, rho: Complex64) -> Result<Polynomial> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    let mut coeffs = vec![ZERO; n + 2];
    coeffs[0] = -ONE;
    coeffs[1] = rho;
    coeffs[n] = -rho;
    coeffs[n + 1] = ONE;
    Ok(Polynomial::new(coeffs))
}

/// Factor carrying the symmetric eigenvectors: z^(n+1) - rho z^n - rho z + 1.
pub fn poly_c(n: usize, rho: Complex64) -> Result<Polynomial> {
    if n < 2 {
        return Err(KmsError::InvalidSize { n });
    }
    let mut coeffs = vec![ZERO; n + 2];
    coeffs[0] = ONE;
    coeffs[1] = -rho;
    coeffs[n] = -rho;
    coeffs[n + 1] = ONE;
    Ok(Polynomial::new(coeffs))
}

/// Outcome of the self-inversive test a_k = eps * conj(a_(m-k)) with |eps| = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelfInversiveClass {
    /// eps = 1.
    Reciprocal,
    /// eps = -1.
    AntiReciprocal,
    /// Self-inversive with some other unimodular eps.
    GeneralSelfInversive(Complex64),
    NotSelfInversive,
}

/// Tests the coefficient symmetry within 1e-12 of the largest coefficient.
pub fn is_self_inversive(p: &Polynomial) -> SelfInversiveClass {
    let m = p.degree();
    let tol = 1e-12 * p.max_coeff();
    let a0 = p.coeffs[0];
    let am = p.coeffs[m];
    if a0.norm() == 0.0 || (a0.norm() - am.norm()).abs() > tol {
        return SelfInversiveClass::NotSelfInversive;
    }
    let eps = am / a0.conj();
    for k in 0..=m {
        if (p.coeffs[k] - eps * p.coeffs[m - k].conj()).norm() > tol {
            return SelfInversiveClass::NotSelfInversive;
        }
    }
    if (eps - ONE).norm() <= 1e-9 {
        SelfInversiveClass::Reciprocal
    } else if (eps + ONE).norm() <= 1e-9 {
        SelfInversiveClass::AntiReciprocal
    } else {
        SelfInversiveClass::GeneralSelfInversive(eps)
    }
}

/// Which symmetry factor a zero of the palindromic polynomial comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroType {
    /// Zero of the s factor; eigenvector is skew-symmetric about its middle.
    Type1,
    /// Zero of the c factor; eigenvector is symmetric about its middle.
    Type2,
}

impl ZeroType {
    pub fn index(self) -> u8 {
        match self {
            ZeroType::Type1 => 1,
            ZeroType::Type2 => 2,
        }
    }

    /// The type hosting eigenvalue index k under the odd/even convention.
    pub fn from_parity(k: usize) -> Self {
        if k % 2 == 1 {
            ZeroType::Type1
        } else {
            ZeroType::Type2
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            ZeroType::Type1 => ZeroType::Type2,
            ZeroType::Type2 => ZeroType::Type1,
        }
    }
}

pub(crate) fn eval_s(n: usize, rho: Complex64, z: Complex64) -> Complex64 {
    z.powu(n as u32 + 1) - rho * z.powu(n as u32) + rho * z - ONE
}

pub(crate) fn eval_c(n: usize, rho: Complex64, z: Complex64) -> Complex64 {
    z.powu(n as u32 + 1) - rho * z.powu(n as u32) - rho * z + ONE
}

/// Attributes a zero of the palindromic polynomial to its symmetry factor
/// by comparing residuals of the two factors. Exactly one vanishes in exact
/// arithmetic away from the degenerate parameters.
pub fn classify_zero(n: usize, rho: Complex64, z: Complex64) -> Result<ZeroType> {
    let tol = 1e-8 * (1.0 + rho.norm()).powi(n as i32 + 1);
    let sv = eval_s(n, rho, z).norm();
    let cv = eval_c(n, rho, z).norm();
    if sv > tol && cv > tol {
        return Err(KmsError::AmbiguousZeroType { z, s_resid: sv, c_resid: cv });
    }
    Ok(if sv <= cv { ZeroType::Type1 } else { ZeroType::Type2 })
}

/// lambda = z (1 - rho^2) / ((z - rho)(1 - rho z)); the same value results
/// from z and from 1/z.
pub fn zero_to_eigenvalue(rho: Complex64, z: Complex64) -> Result<Complex64> {
    let den = (z - rho) * (ONE - rho * z);
    if den.norm_sqr() == 0.0 {
        return Err(KmsError::Pole {
            what: format!("zero-to-eigenvalue map has poles at z = rho and z = 1/rho, got z = {z}"),
        });
    }
    Ok(z * (ONE - rho * rho) / den)
}

/// Inverts the eigenvalue map: the pair {z, 1/z} with
/// z = tau +- sqrt(tau^2 - 1), tau = (rho^2 (lambda+1) + lambda - 1)/(2 lambda rho).
/// First member has |z| >= 1, ties broken toward nonnegative imaginary part;
/// the second is its exact reciprocal.
pub fn eigenvalue_to_zeros(rho: Complex64, lambda: Complex64) -> Result<(Complex64, Complex64)> {
    if lambda.norm_sqr() == 0.0 || rho.norm_sqr() == 0.0 {
        return Err(KmsError::Domain {
            what: "zero recovery needs lambda != 0 and rho != 0".into(),
        });
    }
    let tau = (rho * rho * (lambda + ONE) + lambda - ONE) / (2.0 * lambda * rho);
    let w = (tau * tau - ONE).sqrt();
    let zp = tau + w;
    let zm = tau - w;
    let big = if (zp.norm() - zm.norm()).abs() <= 1e-9 * (zp.norm() + zm.norm()) {
        if zp.im >= 0.0 {
            zp
        } else {
            zm
        }
    } else if zp.norm() >= zm.norm() {
        zp
    } else {
        zm
    };
    Ok((big, big.inv()))
}
