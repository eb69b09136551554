//! Exact computer algebra for the braid matrices of the q-deformed general
//! linear, orthogonal and symplectic groups: spectral projector
//! decompositions, generalized braid matrices and the equations they modify,
//! Baxterization with a multiplicative spectral parameter, a rank-one braid
//! class that survives q = 1, explicit diagonalizers, and the covariantly
//! quantized coordinate/differential relations they induce.
//!
//! Everything is computed over exact rational-function fields; no floating
//! point enters any identity check.

pub mod baxter;
pub mod braidcheck;
pub mod diag;
pub mod error;
pub mod linalg;
pub mod ncspace;
pub mod newclass;
pub mod report;
pub mod ring;
pub mod rmatrix;
pub mod suite;

pub use error::{Error, Result};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
