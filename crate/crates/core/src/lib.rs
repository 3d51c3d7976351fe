//! Finite-dimensional frames, K-frames, and weaving.
//!
//! The crate has four layers:
//!
//! * [`numeric`] — a self-contained dense complex kernel: cyclic-Jacobi
//!   Hermitian eigensolver, Gram-based SVD, Moore-Penrose pseudoinverse,
//!   range projectors, and whitened Hermitian pencils.
//! * [`frame`] — frame families, frame operators, optimal frame bounds
//!   (optionally restricted to a subspace), and optimal K-frame bounds.
//! * [`weave`] — interleavings of several families across index partitions,
//!   with exhaustive or sampled sweeps that report universal bounds, the
//!   worst partition, and a witness vector.
//! * [`certify`] — certificate builders that transport frame and weaving
//!   bounds along operators (images, pullbacks, range restrictions,
//!   perturbations, erasures) and compare the claimed constants against
//!   independently recomputed ones.
//!
//! Everything is deterministic: identical input bits and seeds produce
//! identical output bits.

pub mod certify;
pub mod error;
pub mod frame;
pub mod numeric;
pub mod random;
pub mod weave;

pub use error::{Error, Result};

/// Largest matrix dimension the dense solvers accept.
pub const DIM_CAP: usize = 64;
/// Relative cutoff deciding numerical rank from singular values.
pub const RANK_TOL: f64 = 1e-10;
/// Positivity threshold for "this lower bound makes a frame" verdicts.
pub const FRAME_TOL: f64 = 1e-10;
/// Relative slack allowed when comparing claimed against achieved bounds.
pub const CERT_TOL: f64 = 1e-8;
/// A perturbation inequality is accepted when the maximized residual stays
/// below this value.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Default tolerance for Hermitian-deviation checks.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Default partition budget for weaving sweeps.
pub const DEFAULT_BUDGET: u64 = 1 << 20;
