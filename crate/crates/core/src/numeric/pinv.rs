//! Moore-Penrose pseudoinverse and range projectors.

use num_complex::Complex64;

use crate::error::Result;
use crate::numeric::matrix::ComplexMatrix;
use crate::numeric::svd::svd;

/// Pseudoinverse via SVD. Singular values below `rank_tol` times the largest
/// one are treated as exact zeros.
pub fn pinv(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let s = svd(m)?;
    let k = s.singular_values.len();
    let cutoff = rank_tol * s.singular_values.first().copied().unwrap_or(0.0);
    let mut inv_diag = ComplexMatrix::zeros(k, k);
    for (i, &sv) in s.singular_values.iter().enumerate() {
        if sv > cutoff && sv > 0.0 {
            inv_diag.set(i, i, Complex64::new(1.0 / sv, 0.0));
        }
    }
    s.v.mul(&inv_diag)?.mul(&s.u.adjoint())
}

/// Numerical rank: singular values above `rank_tol` times the largest one.
pub fn numerical_rank(m: &ComplexMatrix, rank_tol: f64) -> Result<usize> {
    let s = svd(m)?;
    let cutoff = rank_tol * s.singular_values.first().copied().unwrap_or(0.0);
    Ok(s.singular_values.iter().filter(|&&sv| sv > cutoff && sv > 0.0).count())
}

/// Orthogonal projector onto the column space, computed as `M M†`.
pub fn range_projector(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    m.mul(&pinv(m, rank_tol)?)
}

/// Orthonormal basis of the column space: the left singular vectors whose
/// singular value clears `rank_tol` times the largest. Returns `None` when
/// the matrix is numerically zero.
pub fn range_basis(m: &ComplexMatrix, rank_tol: f64) -> Result<Option<ComplexMatrix>> {
    let s = svd(m)?;
    let cutoff = rank_tol * s.singular_values.first().copied().unwrap_or(0.0);
    let cols: Vec<Vec<Complex64>> = s
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &sv)| sv > cutoff && sv > 0.0)
        .map(|(j, _)| s.u.column(j))
        .collect();
    if cols.is_empty() {
        return Ok(None);
    }
    Ok(Some(ComplexMatrix::from_cols(&cols)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RANK_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn penrose_residuals(m: &ComplexMatrix, p: &ComplexMatrix) -> [f64; 4] {
        let mpm = m.mul(p).unwrap().mul(m).unwrap();
        let pmp = p.mul(m).unwrap().mul(p).unwrap();
        let mp = m.mul(p).unwrap();
        let pm = p.mul(m).unwrap();
        [
            mpm.sub(m).unwrap().frobenius_norm() / (1.0 + m.frobenius_norm()),
            pmp.sub(p).unwrap().frobenius_norm() / (1.0 + p.frobenius_norm()),
            mp.sub(&mp.adjoint()).unwrap().frobenius_norm() / (1.0 + mp.frobenius_norm()),
            pm.sub(&pm.adjoint()).unwrap().frobenius_norm() / (1.0 + pm.frobenius_norm()),
        ]
    }

    #[test]
    fn diagonal_pinv_inverts_nonzero_entries() {
        let m = ComplexMatrix::diag_real(&[2.0, 0.0]).unwrap();
        let p = pinv(&m, RANK_TOL).unwrap();
        assert_eq!(p.get(0, 0), c(0.5, 0.0));
        assert_eq!(p.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn identity_is_its_own_pinv() {
        let m = ComplexMatrix::identity(4);
        let p = pinv(&m, RANK_TOL).unwrap();
        assert!(p.sub(&m).unwrap().frobenius_norm() < 1e-13);
    }

    #[test]
    fn rectangular_pinv_satisfies_penrose() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.5)],
            vec![c(3.0, 1.0), c(0.0, 0.0), c(0.0, 2.0)],
            vec![c(1.0, -1.0), c(2.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let p = pinv(&m, RANK_TOL).unwrap();
        assert_eq!((p.rows(), p.cols()), (3, 4));
        for r in penrose_residuals(&m, &p) {
            assert!(r <= 1e-9, "penrose residual {r}");
        }
    }

    #[test]
    fn projector_fixtures() {
        let m = ComplexMatrix::diag_real(&[1.0, 0.0]).unwrap();
        let p = range_projector(&m, RANK_TOL).unwrap();
        assert!(p.sub(&m).unwrap().frobenius_norm() < 1e-13);

        // Full-rank square matrix projects onto everything.
        let f = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let pf = range_projector(&f, RANK_TOL).unwrap();
        assert!(pf.sub(&ComplexMatrix::identity(2)).unwrap().frobenius_norm() < 1e-10);

        // Column (1, 1)/sqrt(2): projector has all entries 1/2.
        let col = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]]).unwrap();
        let pc = range_projector(&col, RANK_TOL).unwrap();
        for r in 0..2 {
            for cidx in 0..2 {
                assert!((pc.get(r, cidx) - c(0.5, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn projector_is_hermitian_idempotent() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.5, 0.0)],
            vec![c(0.0, -1.0), c(1.0, 1.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let p = range_projector(&m, RANK_TOL).unwrap();
        assert!(p.hermitian_deviation() <= 1e-9);
        let pp = p.mul(&p).unwrap();
        assert!(pp.sub(&p).unwrap().frobenius_norm() <= 1e-9);
    }

    #[test]
    fn range_basis_spans_the_columns() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let basis = range_basis(&m, RANK_TOL).unwrap().unwrap();
        assert_eq!(basis.cols(), 1);
        // The basis column is (1, 1)/sqrt(2) up to phase.
        let b0 = basis.column(0);
        assert!((b0[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((b0[0] - b0[1]).norm() < 1e-12);

        assert!(range_basis(&ComplexMatrix::zeros(2, 3), RANK_TOL).unwrap().is_none());
    }
}
