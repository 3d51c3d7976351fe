//! Hermitian matrix pencils `(M1, M2)` with positive semidefinite sides.
//!
//! Values are Rayleigh quotients `<M1 f, f> / <M2 f, f>` on the positive
//! eigenspace of `M2`. Whitening reduces the pencil to an ordinary Hermitian
//! eigenproblem: with `M2 = V Λ V*` and `W = V₊ Λ₊^{-1/2}`, the quotient
//! spectrum equals the spectrum of `W* M1 W`. Directions where `M2` vanishes
//! carry no constraint and are excluded; the solution reports how much of
//! `M1` lives on that excluded kernel so callers can decide whether the
//! restriction was lossless.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::eig::hermitian_eig;
use crate::numeric::matrix::{normalized, ComplexMatrix};

/// Generalized eigenvalue problem for two PSD Hermitian matrices.
#[derive(Clone, Debug)]
pub struct PencilProblem {
    m1: ComplexMatrix,
    m2: ComplexMatrix,
    tol: f64,
}

impl PencilProblem {
    /// Validates shape, Hermitian deviation, and positive semidefiniteness
    /// of both sides. `tol` scales every check and the whitening cutoff.
    pub fn new(m1: ComplexMatrix, m2: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m1.is_square() || !m2.is_square() || m1.rows() != m2.rows() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "pencil needs equal square matrices, got {}x{} and {}x{}",
                    m1.rows(),
                    m1.cols(),
                    m2.rows(),
                    m2.cols()
                ),
            });
        }
        for m in [&m1, &m2] {
            let deviation = m.hermitian_deviation();
            if deviation > tol * (1.0 + m.frobenius_norm()) {
                return Err(Error::NotHermitian { deviation });
            }
            let eig = hermitian_eig(m, tol)?;
            let min = eig.values.first().copied().unwrap_or(0.0);
            if min < -tol * (1.0 + m.frobenius_norm()) {
                return Err(Error::NotPsd { eigenvalue: min });
            }
        }
        Ok(Self { m1, m2, tol })
    }

    pub fn m1(&self) -> &ComplexMatrix {
        &self.m1
    }

    pub fn m2(&self) -> &ComplexMatrix {
        &self.m2
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Whitened spectrum of a pencil plus kernel diagnostics.
#[derive(Clone, Debug)]
pub struct PencilSolution {
    /// Quotient spectrum on the positive eigenspace of `M2`, ascending.
    pub values: Vec<f64>,
    /// Unit vector attaining the smallest quotient.
    pub smallest_witness: Vec<Complex64>,
    /// Unit vector attaining the largest quotient.
    pub largest_witness: Vec<Complex64>,
    /// Dimension of the positive eigenspace of `M2`.
    pub kept: usize,
    /// Dimension of the excluded kernel of `M2`.
    pub kernel_dim: usize,
    /// `‖M1 V₀‖_F` over an orthonormal kernel basis `V₀`; zero means the
    /// restriction to the positive eigenspace loses nothing of `M1`.
    pub kernel_residual: f64,
}

/// Factor `W = V₊ Λ₊^{-1/2}` of a whitened pencil, reusable across many
/// left-hand sides that share the same `M2`.
#[derive(Clone, Debug)]
pub struct Whitener {
    /// `n x kept` transformation into whitened coordinates.
    pub w: ComplexMatrix,
    /// Orthonormal basis of the excluded kernel; empty when `M2` is
    /// positive definite.
    pub kernel: Vec<Vec<Complex64>>,
}

/// Builds the whitening factor of `M2`, or [`Error::ZeroPencil`] when `M2`
/// is numerically zero (largest eigenvalue at or below `tol`).
pub fn whitener(m2: &ComplexMatrix, tol: f64) -> Result<Whitener> {
    let eig = hermitian_eig(m2, tol)?;
    let n = m2.rows();
    let lambda_max = eig.values.last().copied().unwrap_or(0.0);
    if lambda_max <= tol {
        return Err(Error::ZeroPencil);
    }
    let cutoff = tol * lambda_max;
    let mut w_cols = Vec::new();
    let mut kernel = Vec::new();
    for j in 0..n {
        let lambda = eig.values[j];
        if lambda >= cutoff {
            let scale = 1.0 / lambda.sqrt();
            let col: Vec<Complex64> = eig.vectors.column(j).iter().map(|&z| z * scale).collect();
            w_cols.push(col);
        } else {
            kernel.push(eig.vectors.column(j));
        }
    }
    Ok(Whitener { w: ComplexMatrix::from_cols(&w_cols)?, kernel })
}

/// Solves the pencil: whitened spectrum, witnesses, kernel diagnostics.
pub fn solve_pencil(p: &PencilProblem) -> Result<PencilSolution> {
    let white = whitener(&p.m2, p.tol)?;
    // The whitened product is Hermitian in exact arithmetic; symmetrize to
    // strip rounding asymmetry amplified by Λ^{-1/2}.
    let raw = white.w.adjoint().mul(&p.m1)?.mul(&white.w)?;
    let b = raw.add(&raw.adjoint())?.scaled(Complex64::new(0.5, 0.0))?;
    let eig = hermitian_eig(&b, p.tol)?;
    let kept = white.w.cols();

    // The quotient of a PSD pencil is nonnegative; tiny negatives are noise.
    let values: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0)).collect();

    let smallest = normalized(&white.w.matvec(&eig.vectors.column(0))?);
    let largest = normalized(&white.w.matvec(&eig.vectors.column(kept - 1))?);

    let mut kernel_residual = 0.0;
    for v0 in &white.kernel {
        let image = p.m1.matvec(v0)?;
        kernel_residual += image.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }

    Ok(PencilSolution {
        values,
        smallest_witness: smallest,
        largest_witness: largest,
        kept,
        kernel_dim: white.kernel.len(),
        kernel_residual: kernel_residual.sqrt(),
    })
}

/// Smallest quotient of the pencil and a unit witness attaining it.
pub fn smallest_pencil_eig(p: &PencilProblem) -> Result<(f64, Vec<Complex64>)> {
    let sol = solve_pencil(p)?;
    Ok((sol.values[0], sol.smallest_witness))
}

/// Largest quotient of the pencil and a unit witness attaining it.
pub fn largest_pencil_eig(p: &PencilProblem) -> Result<(f64, Vec<Complex64>)> {
    let sol = solve_pencil(p)?;
    Ok((*sol.values.last().unwrap(), sol.largest_witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RANK_TOL;
    use approx::assert_relative_eq;

    #[test]
    fn identity_pencil_returns_smallest_eigenvalue() {
        let p = PencilProblem::new(
            ComplexMatrix::diag_real(&[2.0, 1.0]).unwrap(),
            ComplexMatrix::identity(2),
            RANK_TOL,
        )
        .unwrap();
        let (v, w) = smallest_pencil_eig(&p).unwrap();
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
        assert!((w[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_side_restricts_to_positive_eigenspace() {
        let p = PencilProblem::new(
            ComplexMatrix::diag_real(&[2.0, 1.0]).unwrap(),
            ComplexMatrix::diag_real(&[1.0, 0.0]).unwrap(),
            RANK_TOL,
        )
        .unwrap();
        let sol = solve_pencil(&p).unwrap();
        assert_eq!(sol.values, vec![2.0]);
        assert_eq!(sol.kept, 1);
        assert_eq!(sol.kernel_dim, 1);
        // M1 acts on the excluded axis, and the report says so.
        assert_relative_eq!(sol.kernel_residual, 1.0, epsilon = 1e-12);
        assert!((sol.smallest_witness[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equal_psd_sides_give_unit_quotient() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.5)],
            vec![Complex64::new(0.5, -0.5), Complex64::new(1.0, 0.0)],
        ])
        .unwrap();
        let p = PencilProblem::new(m.clone(), m, RANK_TOL).unwrap();
        let sol = solve_pencil(&p).unwrap();
        for v in sol.values {
            assert_relative_eq!(v, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn zero_side_is_rejected() {
        let p = PencilProblem::new(ComplexMatrix::identity(2), ComplexMatrix::zeros(2, 2), RANK_TOL)
            .unwrap();
        assert_eq!(smallest_pencil_eig(&p).unwrap_err(), Error::ZeroPencil);
    }

    #[test]
    fn non_psd_side_is_rejected() {
        let err = PencilProblem::new(
            ComplexMatrix::diag_real(&[1.0, -1.0]).unwrap(),
            ComplexMatrix::identity(2),
            RANK_TOL,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotPsd { .. }));
    }

    #[test]
    fn witness_attains_the_quotient() {
        let m1 = ComplexMatrix::from_rows(&[
            vec![Complex64::new(3.0, 0.0), Complex64::new(1.0, 1.0)],
            vec![Complex64::new(1.0, -1.0), Complex64::new(2.0, 0.0)],
        ])
        .unwrap();
        let m2 = ComplexMatrix::diag_real(&[4.0, 1.0]).unwrap();
        let p = PencilProblem::new(m1.clone(), m2.clone(), RANK_TOL).unwrap();
        let (v, w) = smallest_pencil_eig(&p).unwrap();
        let top = {
            let m1w = m1.matvec(&w).unwrap();
            w.iter().zip(m1w.iter()).map(|(a, b)| (b * a.conj()).re).sum::<f64>()
        };
        let bottom = {
            let m2w = m2.matvec(&w).unwrap();
            w.iter().zip(m2w.iter()).map(|(a, b)| (b * a.conj()).re).sum::<f64>()
        };
        assert_relative_eq!(top / bottom, v, epsilon = 1e-8, max_relative = 1e-8);
    }
}
