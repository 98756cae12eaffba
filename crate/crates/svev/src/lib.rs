//! Exact finite-n correspondence between singular-value and eigenvalue
//! statistics of bi-unitarily invariant complex random matrix ensembles:
//! analytic densities and kernels, the harmonic-analysis transform layer,
//! invariance-breaking deformations, and Monte Carlo verification.

pub mod error;
pub mod numerics;
pub mod par;
pub mod weights;

pub use error::{Error, Result};
