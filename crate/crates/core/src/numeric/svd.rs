//! Singular value decomposition through the Gram matrix.
//!
//! `svd` diagonalizes `M*M` with the Hermitian Jacobi solver, recovers left
//! singular vectors as `M v / s`, re-orthonormalizes them (clustered singular
//! values make the recovered columns drift), and completes the basis for the
//! null block. The Gram route cannot resolve singular values below roughly
//! `1e-7` of the largest one; anything under that cutoff is reported as an
//! exact zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::eig::hermitian_eig;
use crate::numeric::matrix::{inner, vec_norm, ComplexMatrix};
use crate::{DIM_CAP, HERMITIAN_TOL};

/// Singular values below `GRAM_CUTOFF * s_max` are indistinguishable from
/// zero after squaring into the Gram matrix.
const GRAM_CUTOFF: f64 = 1e-7;

/// Economy-size singular value decomposition `M = U diag(s) V*`.
#[derive(Clone, Debug)]
pub struct SvdResult {
    /// `rows x k` with orthonormal columns, `k = min(rows, cols)`.
    pub u: ComplexMatrix,
    /// Singular values in descending order, length `k`.
    pub singular_values: Vec<f64>,
    /// `cols x k` with orthonormal columns.
    pub v: ComplexMatrix,
}

pub fn svd(m: &ComplexMatrix) -> Result<SvdResult> {
    let (rows, cols) = (m.rows(), m.cols());
    let dim = rows.max(cols);
    if dim > DIM_CAP {
        return Err(Error::DimensionCap { dim, cap: DIM_CAP });
    }
    let k = rows.min(cols);

    let gram = m.adjoint().mul(m)?;
    let eig = hermitian_eig(&gram, HERMITIAN_TOL)?;

    // Top k eigenpairs, descending.
    let mut singular_values = Vec::with_capacity(k);
    let mut v_cols = Vec::with_capacity(k);
    for j in 0..k {
        let idx = cols - 1 - j;
        singular_values.push(eig.values[idx].max(0.0).sqrt());
        v_cols.push(eig.vectors.column(idx));
    }
    let s_max = singular_values.first().copied().unwrap_or(0.0);
    for s in singular_values.iter_mut() {
        if *s <= GRAM_CUTOFF * s_max {
            *s = 0.0;
        }
    }

    // Recover left singular vectors for the nonzero block, then fill the
    // zero block with an orthonormal completion.
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    for (j, &s) in singular_values.iter().enumerate() {
        if s > 0.0 {
            let mut col = m.matvec(&v_cols[j])?;
            for z in col.iter_mut() {
                *z /= s;
            }
            u_cols.push(col);
        }
    }
    orthonormalize_columns(&mut u_cols);
    complete_basis(&mut u_cols, rows, k);

    Ok(SvdResult {
        u: ComplexMatrix::from_cols(&u_cols)?,
        singular_values,
        v: ComplexMatrix::from_cols(&v_cols)?,
    })
}

/// Largest singular value.
pub fn op_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(svd(m)?.singular_values.first().copied().unwrap_or(0.0))
}

/// Modified Gram-Schmidt, two passes, in place. Columns that collapse under
/// projection (norm below 0.5 of a unit vector) are dropped.
pub(crate) fn orthonormalize_columns(cols: &mut Vec<Vec<Complex64>>) {
    let mut kept: Vec<Vec<Complex64>> = Vec::with_capacity(cols.len());
    for col in cols.drain(..) {
        let mut candidate = col;
        for _ in 0..2 {
            for basis in &kept {
                let coeff = inner(&candidate, basis);
                for (cz, bz) in candidate.iter_mut().zip(basis.iter()) {
                    *cz -= coeff * bz;
                }
            }
        }
        let norm = vec_norm(&candidate);
        if norm > 0.5 {
            for z in candidate.iter_mut() {
                *z /= norm;
            }
            kept.push(candidate);
        }
    }
    *cols = kept;
}

/// Extends an orthonormal set to `want` columns of length `len`,
/// deterministically. Each new column is the standard basis vector with the
/// largest component outside the current span, re-orthonormalized; as long
/// as the span is incomplete that component has norm at least
/// `sqrt((len - kept) / len)`, so the loop always makes progress.
pub(crate) fn complete_basis(cols: &mut Vec<Vec<Complex64>>, len: usize, want: usize) {
    while cols.len() < want {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for idx in 0..len {
            let mut candidate = vec![Complex64::new(0.0, 0.0); len];
            candidate[idx] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for basis in cols.iter() {
                    let coeff = inner(&candidate, basis);
                    for (cz, bz) in candidate.iter_mut().zip(basis.iter()) {
                        *cz -= coeff * bz;
                    }
                }
            }
            let norm = vec_norm(&candidate);
            if best.as_ref().map_or(true, |(b, _)| norm > *b) {
                best = Some((norm, candidate));
            }
        }
        let (norm, mut candidate) = best.expect("dimension is positive");
        debug_assert!(norm > 1e-6, "residual collapsed during basis completion");
        for z in candidate.iter_mut() {
            *z /= norm;
        }
        cols.push(candidate);
    }
}
