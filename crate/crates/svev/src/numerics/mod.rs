//! Shared numeric machinery: special functions, quadrature, differentiation
//! and reproducible random number generation.

pub mod diff;
pub mod quad;
pub mod rng;
pub mod special;
