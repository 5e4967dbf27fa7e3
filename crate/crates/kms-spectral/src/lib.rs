//! Structured spectral solver for the Kac-Murdock-Szego matrix family
//! K_n(rho) = [rho^|j-k|] with complex parameter rho.
//!
//! The point of the crate is that this family never needs a general
//! eigensolver: eigenvalues come from bracketed scalar root-finding on
//! trigonometric ratios (real rho) or from the zeros of a pair of low-degree
//! polynomials (complex rho), with eigenvectors in closed form. The oracle
//! module carries independent dense reference solvers used to check all of
//! this in the test suite and the `verify` command.
//!
//! Module layout:
//! - [`matrix`]: construction, inverse, determinant, generating symbol
//! - [`chebpoly`]: characteristic polynomial, zero polynomials, zero maps
//! - [`classify`]: structural matrix classes and brute-force verification
//! - [`realspectrum`]: full real-parameter eigensolver
//! - [`complexspectrum`]: complex-parameter eigensolver, double-eigenvalue loci
//! - [`approx`]: closed-form approximations with error reporting
//! - [`oracle`]: independent reference solvers
//! - [`verify`]: named invariant checks shared by tests and the CLI

pub mod approx;
pub mod chebpoly;
pub mod classify;
pub mod complexspectrum;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod realspectrum;
pub mod verify;

pub use chebpoly::{Polynomial, ZeroType};
pub use error::{KmsError, Result};
pub use matrix::{DenseMatrix, KmsParams, SymbolRange};
pub use realspectrum::{EigenClass, EigenPair, SpectrumResult};
