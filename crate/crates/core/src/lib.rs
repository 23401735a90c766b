//! Spectra of random hopping-sign tridiagonal operators.
//!
//! The operators studied here act on `ℓ²(ℤ)` as
//! `(A_c f)_n = c_n f_{n-1} + f_{n+1}` with coefficients `c_n ∈ {±σ}`.
//! The crate is organised bottom-up:
//!
//! - [`seqcore`]: sign words, finite windows, the sequence square-root maps
//!   and the special sequences built from them.
//! - [`transfer`]: transfer matrices of periodic words, the trace/determinant
//!   classification of the plane, closed-form spectral curves and region
//!   predicates.
//! - [`polyalg`]: exact integer polynomials and the trace/determinant
//!   identities of the self-similar sign sequence.
//! - [`eigen`]: a dense complex eigenvalue solver and an independent
//!   small-matrix oracle.
//! - [`spectra`]: finite and periodised matrices, Bloch spectra, enumeration
//!   of periodic spectra, random sampling and cross-checks.
//! - [`suite`]: the verification suite behind `hopspec verify`.

pub mod eigen;
mod error;
pub mod polyalg;
pub mod seqcore;
pub mod spectra;
pub mod suite;
pub mod transfer;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Version string embedded in CSV and SVG headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
