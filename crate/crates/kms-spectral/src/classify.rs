//! Structural classes of K_n(rho) as predicates on the parameter, each
//! backed by a first-principles check on the built matrix for cross
//! validation. The predicate answers are exact in rho; the brute-force
//! answers cost actual linear algebra and carry size caps.

use crate::error::{KmsError, Result};
use crate::matrix::{build_kms, kms_inf_norm, KmsParams};
use crate::oracle::{oracle_eig_kms, oracle_minors};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixClass {
    Positive,
    RealSymmetric,
    Hermitian,
    BoundedSymbol,
    PositiveDefinite,
    PositiveSemidefinite,
    Normal,
    GreensType,
    TotallyPositive,
    Oscillatory,
}

impl MatrixClass {
    pub const ALL: [MatrixClass; 10] = [
        MatrixClass::Positive,
        MatrixClass::RealSymmetric,
        MatrixClass::Hermitian,
        MatrixClass::BoundedSymbol,
        MatrixClass::PositiveDefinite,
        MatrixClass::PositiveSemidefinite,
        MatrixClass::Normal,
        MatrixClass::GreensType,
        MatrixClass::TotallyPositive,
        MatrixClass::Oscillatory,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MatrixClass::Positive => "positive",
            MatrixClass::RealSymmetric => "real_symmetric",
            MatrixClass::Hermitian => "hermitian",
            MatrixClass::BoundedSymbol => "bounded_symbol",
            MatrixClass::PositiveDefinite => "positive_definite",
            MatrixClass::PositiveSemidefinite => "positive_semidefinite",
            MatrixClass::Normal => "normal",
            MatrixClass::GreensType => "greens_type",
            MatrixClass::TotallyPositive => "totally_positive",
            MatrixClass::Oscillatory => "oscillatory",
        }
    }
}

/// Class membership of K_n(rho), one flag per structural property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixClassReport {
    pub positive: bool,
    pub real_symmetric: bool,
    pub hermitian: bool,
    pub bounded_symbol: bool,
    pub positive_definite: bool,
    pub positive_semidefinite: bool,
    pub normal: bool,
    pub greens_type: bool,
    pub totally_positive: bool,
    pub oscillatory: bool,
}

impl MatrixClassReport {
    pub fn get(&self, class: MatrixClass) -> bool {
        match class {
            MatrixClass::Positive => self.positive,
            MatrixClass::RealSymmetric => self.real_symmetric,
            MatrixClass::Hermitian => self.hermitian,
            MatrixClass::BoundedSymbol => self.bounded_symbol,
            MatrixClass::PositiveDefinite => self.positive_definite,
            MatrixClass::PositiveSemidefinite => self.positive_semidefinite,
            MatrixClass::Normal => self.normal,
            MatrixClass::GreensType => self.greens_type,
            MatrixClass::TotallyPositive => self.totally_positive,
            MatrixClass::Oscillatory => self.oscillatory,
        }
    }
}

/// Evaluates every class directly from the parameter:
/// entrywise positive iff rho > 0 real; real symmetric and Hermitian iff
/// rho real; bounded symbol iff |rho| < 1; definite iff -1 < rho < 1 and
/// semidefinite on the closed interval; normal iff rho real or n = 2;
/// Green's type iff rho real nonzero; totally positive (all minors >= 0)
/// iff 0 <= rho <= 1, oscillatory on the open interval.
pub fn classify_params(p: &KmsParams) -> MatrixClassReport {
    let real = p.is_real();
    let r = p.rho.re;
    let mag = p.rho.norm();
    MatrixClassReport {
        positive: real && r > 0.0,
        real_symmetric: real,
        hermitian: real,
        bounded_symbol: mag < 1.0,
        positive_definite: real && r > -1.0 && r < 1.0,
        positive_semidefinite: real && r >= -1.0 && r <= 1.0,
        normal: real || p.n == 2,
        greens_type: real && r != 0.0,
        totally_positive: real && r >= 0.0 && r <= 1.0,
        oscillatory: real && r > 0.0 && r < 1.0,
    }
}

/// The rank-one factorization behind the Green's-matrix structure:
/// entries satisfy `K[j][k] = a_min(j,k) * b_max(j,k)` with `a_j = rho^-j`
/// and `b_j = rho^j`. Only real nonzero rho admits it.
pub fn greens_factors(p: &KmsParams) -> Result<(Vec<f64>, Vec<f64>)> {
    if !p.is_real() {
        return Err(KmsError::NotReal { rho: p.rho });
    }
    let r = p.rho.re;
    if r == 0.0 {
        return Err(KmsError::Domain {
            what: "Green's factorization needs nonzero rho".to_string(),
        });
    }
    let scale = (p.n as f64 - 1.0) * r.abs().ln().abs();
    if scale > crate::matrix::LN_DBL_MAX {
        return Err(KmsError::Overflow {
            what: format!("Green's factors for n = {}, rho = {r} exceed the double range", p.n),
        });
    }
    let a = (0..p.n).map(|j| r.powi(-(j as i32))).collect();
    let b = (0..p.n).map(|j| r.powi(j as i32)).collect();
    Ok((a, b))
}

const EIG_CLASS_LIMIT: usize = 2048;
const NORMAL_CLASS_LIMIT: usize = 256;
const MINOR_CLASS_LIMIT: usize = 6;

/// Checks one class from first principles on the built matrix: entry
/// inspection for positivity and symmetry, a growth probe on the symbol
/// partial sums, eigenvalue signs for definiteness, the commutator norm
/// for normality, factor reconstruction for Green's structure, and full
/// minor enumeration for total positivity. Expensive checks carry size
/// caps and return a size-limit error beyond them.
pub fn verify_class_bruteforce(p: &KmsParams, class: MatrixClass) -> Result<bool> {
    match class {
        MatrixClass::Positive => {
            let k = build_kms(p)?;
            Ok((0..p.n).all(|j| {
                (0..p.n).all(|l| {
                    let e = k.get(j, l);
                    e.re > 0.0 && e.im.abs() <= 1e-14 * e.re.abs()
                })
            }))
        }
        MatrixClass::RealSymmetric => {
            let k = build_kms(p)?;
            let sym = (0..p.n).all(|j| (0..p.n).all(|l| k.get(j, l) == k.get(l, j)));
            Ok(sym && k.is_real())
        }
        MatrixClass::Hermitian => {
            let k = build_kms(p)?;
            Ok((0..p.n).all(|j| {
                (0..p.n).all(|l| {
                    let d = k.get(j, l) - k.get(l, j).conj();
                    d.norm() <= 1e-14
                })
            }))
        }
        MatrixClass::BoundedSymbol => {
            // row sums of |rho|^|m| converge iff the symbol is bounded;
            // compare the inf-norm at two probe sizes
            let m = 4096;
            let a = kms_inf_norm(m, p.rho);
            let b = kms_inf_norm(2 * m, p.rho);
            if !a.is_finite() || !b.is_finite() {
                return Ok(false);
            }
            Ok(b / a <= 1.5)
        }
        MatrixClass::PositiveDefinite | MatrixClass::PositiveSemidefinite => {
            if !p.is_real() {
                return Ok(false);
            }
            if p.n > EIG_CLASS_LIMIT {
                return Err(KmsError::SizeLimit { n: p.n, limit: EIG_CLASS_LIMIT });
            }
            let scale = kms_inf_norm(p.n, p.rho);
            let eig = oracle_eig_kms(p)?;
            let min = eig.eigenvalues.iter().map(|l| l.re).fold(f64::INFINITY, f64::min);
            Ok(if class == MatrixClass::PositiveDefinite {
                min > 1e-10 * scale.max(1.0)
            } else {
                min >= -1e-10 * scale.max(1.0)
            })
        }
        MatrixClass::Normal => {
            if p.n > NORMAL_CLASS_LIMIT {
                return Err(KmsError::SizeLimit { n: p.n, limit: NORMAL_CLASS_LIMIT });
            }
            let k = build_kms(p)?;
            let kc = k.conj();
            let left = k.matmul(&kc);
            let right = kc.matmul(&k);
            let scale = k.inf_norm().powi(2).max(1.0);
            Ok(left.sub(&right).inf_norm() <= 1e-10 * scale)
        }
        MatrixClass::GreensType => {
            if !p.is_real() || p.rho.re == 0.0 {
                return Ok(false);
            }
            let (a, b) = match greens_factors(p) {
                Ok(f) => f,
                Err(KmsError::Overflow { .. }) => return Ok(false),
                Err(e) => return Err(e),
            };
            let k = build_kms(p)?;
            for j in 0..p.n {
                for l in 0..p.n {
                    let (lo, hi) = (j.min(l), j.max(l));
                    let v = a[lo] * b[hi];
                    let want = k.get(j, l).re;
                    if (v - want).abs() > 1e-12 * want.abs().max(1e-300) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        MatrixClass::TotallyPositive => {
            if !p.is_real() {
                return Ok(false);
            }
            if p.n > MINOR_CLASS_LIMIT {
                return Err(KmsError::SizeLimit { n: p.n, limit: MINOR_CLASS_LIMIT });
            }
            let k = build_kms(p)?;
            for order in 1..=p.n {
                if oracle_minors(&k, order)? < -1e-10 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        MatrixClass::Oscillatory => {
            // totally nonnegative, invertible, with positive entries on the
            // first super- and subdiagonals
            if !verify_class_bruteforce(p, MatrixClass::TotallyPositive)? {
                return Ok(false);
            }
            let k = build_kms(p)?;
            let det = crate::matrix::kms_determinant(p);
            if det.norm() <= 1e-12 {
                return Ok(false);
            }
            Ok((0..p.n - 1).all(|j| k.get(j, j + 1).re > 0.0 && k.get(j + 1, j).re > 0.0))
        }
    }
}
