//! The matrix family itself: construction, closed-form inverse and
//! determinant, the generating symbol, and the sign-flip similarity that
//! relates the parameter rho to -rho.
//!
//! The family is K_n(rho) = [rho^|j-k|], complex symmetric Toeplitz with
//! unit diagonal. Everything here is O(n) or O(n^2) and exact in the sense
//! that no iteration is involved.

use crate::error::{KmsError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Natural log of the largest finite double, used for overflow guards.
pub const LN_DBL_MAX: f64 = 709.782712893384;

/// Order and parameter of a matrix in the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KmsParams {
    pub n: usize,
    pub rho: Complex64,
}

impl KmsParams {
    pub fn new(n: usize, rho: Complex64) -> Result<Self> {
        if n < 2 {
            return Err(KmsError::InvalidSize { n });
        }
        Ok(KmsParams { n, rho })
    }

    pub fn real(n: usize, rho: f64) -> Result<Self> {
        Self::new(n, Complex64::new(rho, 0.0))
    }

    /// True when rho lies on the real axis.
    pub fn is_real(&self) -> bool {
        self.rho.im == 0.0
    }

    /// The threshold (n+1)/(n-1) separating one from two eigenvalues
    /// outside the symbol range on the real-parameter axis.
    pub fn xi(&self) -> f64 {
        (self.n as f64 + 1.0) / (self.n as f64 - 1.0)
    }
}

/// Row-major dense complex matrix. Shared by the builders, the brute-force
/// classifiers and the oracle eigensolvers.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub n: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, entries: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            m.set(j, j, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            for k in 0..n {
                m.set(j, k, f(j, k));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, j: usize, k: usize, v: Complex64) {
        self.entries[j * self.n + k] = v;
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.im == 0.0)
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for j in 0..n {
            for l in 0..n {
                let a = self.get(j, l);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..n {
                    let v = out.get(j, k) + a * other.get(l, k);
                    out.set(j, k, v);
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.n, x.len());
        (0..self.n)
            .map(|j| (0..self.n).map(|k| self.get(j, k) * x[k]).sum())
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|k| self.get(j, k).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn conj(&self) -> DenseMatrix {
        DenseMatrix { n: self.n, entries: self.entries.iter().map(|e| e.conj()).collect() }
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        DenseMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Builds K_n(rho) entrywise. Fails when |rho|^(n-1) would leave the double
/// range; infinities in a matrix help nobody downstream.
pub fn build_kms(p: &KmsParams) -> Result<DenseMatrix> {
    let r = p.rho.norm();
    if r > 1.0 && (p.n as f64 - 1.0) * r.ln() > LN_DBL_MAX {
        return Err(KmsError::Overflow {
            what: format!("|rho|^(n-1) out of range for n = {}, |rho| = {r:.6}", p.n),
        });
    }
    let mut pows = Vec::with_capacity(p.n);
    let mut cur = Complex64::new(1.0, 0.0);
    for _ in 0..p.n {
        pows.push(cur);
        cur *= p.rho;
    }
    Ok(DenseMatrix::from_fn(p.n, |j, k| pows[j.abs_diff(k)]))
}

/// Closed-form inverse: tridiagonal with corner entries 1, interior diagonal
/// 1 + rho^2 and off-diagonal -rho, all divided by 1 - rho^2.
pub fn kms_inverse(p: &KmsParams) -> Result<DenseMatrix> {
    let (diag, off) = kms_inverse_tridiagonal(p)?;
    let mut m = DenseMatrix::zeros(p.n);
    for j in 0..p.n {
        m.set(j, j, diag[j]);
        if j + 1 < p.n {
            m.set(j, j + 1, off[j]);
            m.set(j + 1, j, off[j]);
        }
    }
    Ok(m)
}

/// The inverse without the O(n^2) storage: returns (diagonal, off-diagonal).
pub fn kms_inverse_tridiagonal(p: &KmsParams) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let one = Complex64::new(1.0, 0.0);
    let d = one - p.rho * p.rho;
    if d.norm_sqr() == 0.0 {
        return Err(KmsError::SingularParameter { rho: p.rho });
    }
    let mut diag = vec![(one + p.rho * p.rho) / d; p.n];
    diag[0] = one / d;
    diag[p.n - 1] = one / d;
    let off = vec![-p.rho / d; p.n - 1];
    Ok((diag, off))
}

/// det K_n(rho) = (1 - rho^2)^(n-1).
pub fn kms_determinant(p: &KmsParams) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (one - p.rho * p.rho).powu(p.n as u32 - 1)
}

/// The generating symbol (1 - rho^2) / (1 - 2 rho cos(theta) + rho^2),
/// taken as the same rational expression for every rho (for |rho| >= 1 this
/// is the analytic continuation of the series it sums for |rho| < 1).
pub fn symbol_sigma(rho: Complex64, theta: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let denom = one - 2.0 * rho * theta.cos() + rho * rho;
    if denom.norm_sqr() == 0.0 {
        return Err(KmsError::Pole {
            what: format!("symbol denominator vanishes at rho = {rho}, theta = {theta}"),
        });
    }
    Ok((one - rho * rho) / denom)
}

/// Range of the symbol over the unit circle for real rho.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolRange {
    pub lo: f64,
    pub hi: f64,
}

impl SymbolRange {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }
}

/// Endpoints are (1-rho)/(1+rho) and (1+rho)/(1-rho) in whichever order
/// makes lo <= hi. Unbounded at rho = +-1.
pub fn symbol_range(rho: f64) -> Result<SymbolRange> {
    if rho == 1.0 || rho == -1.0 {
        return Err(KmsError::Domain {
            what: format!("symbol range is unbounded at rho = {rho}"),
        });
    }
    let a = (1.0 - rho) / (1.0 + rho);
    let b = (1.0 + rho) / (1.0 - rho);
    Ok(SymbolRange { lo: a.min(b), hi: a.max(b) })
}

/// Multiplies by the alternating-sign involution diag(1, -1, 1, ...):
/// entries at odd 0-based indices change sign. This is the similarity that
/// carries eigenvectors of K_n(rho) to eigenvectors of K_n(-rho).
pub fn signature_flip<T>(y: &mut [T])
where
    T: Copy + std::ops::Neg<Output = T>,
{
    for (j, v) in y.iter_mut().enumerate() {
        if j % 2 == 1 {
            *v = -*v;
        }
    }
}

/// K_n(rho) times a vector in O(n) via the two-sided geometric recurrence
/// L_j = rho (L_{j-1} + y_{j-1}), R_j = rho (R_{j+1} + y_{j+1}).
pub fn kms_matvec(n: usize, rho: Complex64, y: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(n, y.len());
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; n];
    let mut left = zero;
    for j in 0..n {
        if j > 0 {
            left = rho * (left + y[j - 1]);
        }
        out[j] = left + y[j];
    }
    let mut right = zero;
    for j in (0..n).rev() {
        if j + 1 < n {
            right = rho * (right + y[j + 1]);
        }
        out[j] += right;
    }
    out
}

/// Real-vector variant of [`kms_matvec`].
pub fn kms_matvec_real(n: usize, rho: f64, y: &[f64]) -> Vec<f64> {
    assert_eq!(n, y.len());
    let mut out = vec![0.0; n];
    let mut left = 0.0;
    for j in 0..n {
        if j > 0 {
            left = rho * (left + y[j - 1]);
        }
        out[j] = left + y[j];
    }
    let mut right = 0.0;
    for j in (0..n).rev() {
        if j + 1 < n {
            right = rho * (right + y[j + 1]);
        }
        out[j] += right;
    }
    out
}

/// Infinity norm of K_n(rho) in O(n): the matvec recurrence applied to the
/// all-ones vector at |rho|.
pub fn kms_inf_norm(n: usize, rho: Complex64) -> f64 {
    let ones = vec![1.0; n];
    kms_matvec_real(n, rho.norm(), &ones)
        .into_iter()
        .fold(0.0, f64::max)
}

/// Carries an eigenpair of K_n(rho) to the corresponding pair of K_n(-rho):
/// the eigenvalue is unchanged, the vector picks up alternating signs, and
/// for even n the symmetry class of the vector flips (the sign flip turns a
/// symmetric profile into a skew one and vice versa; odd n keeps both).
pub fn transform_negate(pair: &crate::realspectrum::EigenPair, n: usize) -> crate::realspectrum::EigenPair {
    let mut out = pair.clone();
    if let Some(y) = out.vector.as_mut() {
        signature_flip(y);
        crate::realspectrum::normalize_vector(y);
    }
    if n % 2 == 0 {
        out.zero_type = out.zero_type.flipped();
    }
    out
}
