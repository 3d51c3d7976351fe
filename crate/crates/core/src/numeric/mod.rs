//! Dense complex linear algebra kernel.
//!
//! Everything downstream — frame operators, pencil sweeps, certificate
//! checks — reduces to the five primitives exported here:
//!
//! * [`matrix`]: validated row-major complex matrices and vector helpers,
//! * [`eig`]: Hermitian eigendecomposition by cyclic Jacobi rotations,
//! * [`svd`]: singular value decomposition via the Gram eigenproblem,
//! * [`pinv`]: Moore–Penrose pseudoinverse, rank, and range utilities,
//! * [`pencil`]: the generalized eigenproblem `M1 x = λ M2 x` for a pair
//!   of positive semidefinite matrices, solved by whitening `M2`.
//!
//! All routines are deterministic: identical inputs produce bitwise
//! identical outputs, with no dependence on hardware threading.

pub mod eig;
pub mod matrix;
pub mod pencil;
pub mod pinv;
pub mod svd;

pub use eig::{hermitian_eig, EigResult};
pub use matrix::{inner, normalized, vec_norm, ComplexMatrix};
pub use pencil::{largest_pencil_eig, smallest_pencil_eig, solve_pencil, PencilProblem, PencilSolution};
pub use pinv::{numerical_rank, pinv, range_basis, range_projector};
pub use svd::{op_norm, svd, SvdResult};
