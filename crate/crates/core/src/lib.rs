//! Exact eigenvalue certificates for rational symmetric and Gaussian-rational
//! Hermitian matrices.
//!
//! Everything is computed over ℚ or ℚ(i) without rounding. The building
//! blocks are congruence diagonalization `A = P^H·D·P` ([`congruence`]),
//! which yields inertia and positive-definiteness certificates, and
//! eigenvalue counting by the inertia of `A − t·I` ([`spectral`]), which
//! drives bisection down to any rational precision. [`oracle`] recounts the
//! same quantities from the characteristic polynomial for cross-checking.
//!
//! ```
//! use spectra_cert::linalg::SymMatrix;
//! use spectra_cert::scalar::{int, rational};
//! use spectra_cert::spectral::mu_bracket;
//!
//! let a = SymMatrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(2)]]).unwrap();
//! let mu = mu_bracket(&a, &rational(1, 1024)).unwrap();
//! assert!(mu.contains(&int(1)));
//! ```

// Errors carry the offending rationals; they are only built on failure paths.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod congruence;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod polynomial;
pub mod scalar;
pub mod spectral;

pub use congruence::{CongruenceCertificate, Inertia, PivotPolicy};
pub use error::{Error, Result};
pub use linalg::{Matrix, SymMatrix, Vector};
pub use scalar::{GaussianRational, Rational, Scalar};
pub use spectral::{EigenBracket, GapCertificate};
