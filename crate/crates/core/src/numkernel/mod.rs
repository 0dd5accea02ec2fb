//! Dense numerical kernels: symmetric eigendecomposition, SVD, complex
//! log-determinants and seeded randomness. Everything here is a pure
//! function of its inputs.

mod eig;
mod lu;
mod matrix;
mod rng;
mod svd;

pub use eig::{sym_eig, sym_eig_jacobi, SymEig};
pub use lu::{complex_log_det, wrap_angle, LogDet};
pub use matrix::{ComplexMatrix, DenseMatrix};
pub use rng::RngStream;
pub use svd::{svd, svd_warm, Svd, CLAMP_REL};
