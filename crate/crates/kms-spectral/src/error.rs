//! Error type shared by all solver modules.

use num_complex::Complex64;
use std::fmt;

/// Errors reported by matrix construction, root solvers and oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum KmsError {
    /// Matrix order below the supported minimum of 2.
    InvalidSize { n: usize },
    /// A real-parameter operation was called with a complex rho.
    NotReal { rho: Complex64 },
    /// rho = +1 or -1, where the matrix is singular.
    SingularParameter { rho: Complex64 },
    /// A quantity left the double-precision range.
    Overflow { what: String },
    /// Evaluation requested at a pole of the function.
    Pole { what: String },
    /// Input outside the domain of the operation.
    Domain { what: String },
    /// A sign-change bracket could not be established. Indicates a bug,
    /// the dispatch table is supposed to make this unreachable.
    BracketFailure { k: usize, lo: f64, hi: f64 },
    /// An iterative solve did not reach its tolerance.
    Convergence { what: String },
    /// A zero could not be attributed to either symmetry class.
    AmbiguousZeroType { z: Complex64, s_resid: f64, c_resid: f64 },
    /// Two routes to the same quantity disagree beyond tolerance.
    Inconsistency { what: String },
    /// Problem size above the cap for this (typically cubic-cost) path.
    SizeLimit { n: usize, limit: usize },
    /// A computed result failed its built-in verification.
    Verification { what: String },
}

impl fmt::Display for KmsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KmsError::InvalidSize { n } => write!(f, "matrix order must be at least 2, got {n}"),
            KmsError::NotReal { rho } => write!(f, "operation requires a real parameter, got {rho}"),
            KmsError::SingularParameter { rho } => {
                write!(f, "matrix is singular at rho = {rho}")
            }
            KmsError::Overflow { what } => write!(f, "overflow: {what}"),
            KmsError::Pole { what } => write!(f, "evaluation at a pole: {what}"),
            KmsError::Domain { what } => write!(f, "domain error: {what}"),
            KmsError::BracketFailure { k, lo, hi } => {
                write!(f, "no sign change in bracket [{lo}, {hi}] for root index {k}")
            }
            KmsError::Convergence { what } => write!(f, "failed to converge: {what}"),
            KmsError::AmbiguousZeroType { z, s_resid, c_resid } => write!(
                f,
                "zero {z} fits neither symmetry class (residuals {s_resid:.3e}, {c_resid:.3e})"
            ),
            KmsError::Inconsistency { what } => write!(f, "cross-check failed: {what}"),
            KmsError::SizeLimit { n, limit } => {
                write!(f, "order {n} exceeds the limit {limit} for this path")
            }
            KmsError::Verification { what } => write!(f, "verification failed: {what}"),
        }
    }
}

impl std::error::Error for KmsError {}

pub type Result<T> = std::result::Result<T, KmsError>;
