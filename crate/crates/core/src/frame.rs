//! Frame families, their operators, and optimal bounds.
//!
//! A family of vectors in a finite-dimensional complex space induces the
//! positive semidefinite operator `S = Σ f_i f_i*`. The best constants in
//! `A·‖f‖² ≤ Σ |⟨f, f_i⟩|² ≤ B·‖f‖²` are the extremal eigenvalues of `S`,
//! and the best `A` in the operator-weighted variant
//! `A·‖K*f‖² ≤ Σ |⟨f, f_i⟩|²` is the smallest generalized eigenvalue of the
//! pencil `(S, KK*)`. Bounds can be restricted to a subspace by compressing
//! both sides onto an orthonormal basis of it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::eig::hermitian_eig;
use crate::numeric::matrix::{normalized, ComplexMatrix};
use crate::numeric::pencil::{solve_pencil, PencilProblem};
use crate::numeric::pinv::range_basis;
use crate::{DIM_CAP, FRAME_TOL, HERMITIAN_TOL, RANK_TOL};

/// An ordered list of vectors sharing one ambient dimension.
///
/// Zero vectors are legal members: they contribute nothing to the frame
/// operator, which keeps index-removal and zero-padding interchangeable.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameFamily {
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl FrameFamily {
    /// Validates lengths and finiteness. The family may be empty.
    pub fn new(dim: usize, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                context: "family dimension must be at least 1".into(),
            });
        }
        if dim > DIM_CAP {
            return Err(Error::DimensionCap { dim, cap: DIM_CAP });
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::LengthMismatch {
                    context: format!("vector {} has length {}, family dimension is {}", i, v.len(), dim),
                });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// True when the family holds no vectors.
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// All vectors, in order.
    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// The `i`-th vector.
    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    /// The `dim × n` matrix with the family's vectors as columns.
    pub fn synthesis(&self) -> Result<ComplexMatrix> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        ComplexMatrix::from_cols(&self.vectors)
    }

    /// `S = Σ f_i f_i*`, Hermitian positive semidefinite by construction;
    /// the zero matrix for an empty family.
    pub fn frame_operator(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.dim, self.dim);
        for v in &self.vectors {
            s.add_outer(v, 1.0);
        }
        s
    }

    /// The family `{T f_i}` living in the codomain of `T`.
    pub fn map(&self, t: &ComplexMatrix) -> Result<FrameFamily> {
        if t.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "operator has {} columns but the family dimension is {}",
                    t.cols(),
                    self.dim
                ),
            });
        }
        let vectors = self.vectors.iter().map(|v| t.matvec(v)).collect::<Result<Vec<_>>>()?;
        FrameFamily::new(t.rows(), vectors)
    }

    /// The subfamily at exactly the given indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<FrameFamily> {
        let mut vectors = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::BadErasureIndex { index: i, len: self.len() });
            }
            vectors.push(self.vectors[i].clone());
        }
        FrameFamily::new(self.dim, vectors)
    }

    /// The family with the given indices removed (duplicates ignored).
    pub fn erased(&self, removed: &[usize]) -> Result<FrameFamily> {
        for &i in removed {
            if i >= self.len() {
                return Err(Error::BadErasureIndex { index: i, len: self.len() });
            }
        }
        let keep: Vec<usize> = (0..self.len()).filter(|i| !removed.contains(i)).collect();
        self.subset(&keep)
    }
}

/// Optimal two-sided bounds of a family, possibly restricted to a subspace.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    /// Best lower constant (smallest restricted eigenvalue of `S`).
    pub lower: f64,
    /// Best upper constant (largest restricted eigenvalue of `S`).
    pub upper: f64,
    /// True when `lower` clears the positivity threshold.
    pub is_frame: bool,
    /// Unit vector attaining `lower`.
    pub lower_witness: Vec<Complex64>,
    /// Unit vector attaining `upper`.
    pub upper_witness: Vec<Complex64>,
    /// Dimension of the domain the bounds quantify over.
    pub subspace_dim: usize,
}

/// Optimal operator-weighted lower bound and plain Bessel upper bound.
#[derive(Clone, Debug)]
pub struct KBoundsReport {
    /// Best constant `A` with `A·‖K*f‖² ≤ Σ |⟨f, f_i⟩|²`.
    pub lower: f64,
    /// Best Bessel constant `B` with `Σ |⟨f, f_i⟩|² ≤ B·‖f‖²`.
    pub upper: f64,
    /// True when `lower` clears the positivity threshold.
    pub is_kframe: bool,
    /// True when the weighted quotient is a single constant: the pencil
    /// spectrum is flat and `S` vanishes where `K*` does.
    pub is_tight: bool,
    /// The constant of a tight family (equals `lower` when `is_tight`).
    pub tight_constant: Option<f64>,
    /// Unit vector attaining `lower`.
    pub lower_witness: Vec<Complex64>,
}

/// Optimal frame bounds of `family`, over the whole space or over the
/// column space of `subspace` when given.
pub fn frame_bounds(family: &FrameFamily, subspace: Option<&ComplexMatrix>) -> Result<BoundsReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let s = family.frame_operator();
    let (compressed, basis) = match subspace {
        None => (s, None),
        Some(space) => {
            if space.rows() != family.dim() {
                return Err(Error::DimensionMismatch {
                    context: format!(
                        "subspace lives in dimension {} but the family in {}",
                        space.rows(),
                        family.dim()
                    ),
                });
            }
            let u = range_basis(space, RANK_TOL)?.ok_or(Error::ZeroSubspace)?;
            let raw = u.adjoint().mul(&s)?.mul(&u)?;
            let sym = raw.add(&raw.adjoint())?.scaled(Complex64::new(0.5, 0.0))?;
            (sym, Some(u))
        }
    };
    let eig = hermitian_eig(&compressed, HERMITIAN_TOL)?;
    let lower = eig.values[0].max(0.0);
    let upper = eig.values[eig.values.len() - 1].max(0.0);
    let embed = |col: Vec<Complex64>| -> Result<Vec<Complex64>> {
        match &basis {
            None => Ok(col),
            Some(u) => Ok(normalized(&u.matvec(&col)?)),
        }
    };
    let subspace_dim = basis.as_ref().map_or(family.dim(), |u| u.cols());
    Ok(BoundsReport {
        lower,
        upper,
        is_frame: lower > FRAME_TOL,
        lower_witness: embed(eig.vectors.column(0))?,
        upper_witness: embed(eig.vectors.column(eig.values.len() - 1))?,
        subspace_dim,
    })
}

/// Optimal weighted lower bound of `family` against the operator `k`,
/// together with the Bessel upper bound.
///
/// The lower bound is the smallest eigenvalue of the pencil `(S, KK*)`;
/// directions annihilated by `K*` put no constraint on it and are excluded
/// by the whitening reduction.
pub fn kframe_bounds(family: &FrameFamily, k: &ComplexMatrix) -> Result<KBoundsReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !k.is_square() || k.rows() != family.dim() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "weight operator is {}x{} but the family dimension is {}",
                k.rows(),
                k.cols(),
                family.dim()
            ),
        });
    }
    let s = family.frame_operator();
    let kk = k.mul(&k.adjoint())?;
    let problem = PencilProblem::new(s.clone(), kk, HERMITIAN_TOL)?;
    let solution = match solve_pencil(&problem) {
        Err(Error::ZeroPencil) => return Err(Error::ZeroK),
        other => other?,
    };
    let lower = solution.values[0];
    let spread = solution.values[solution.values.len() - 1] - solution.values[0];
    let eig = hermitian_eig(&s, HERMITIAN_TOL)?;
    let upper = eig.values[eig.values.len() - 1].max(0.0);
    let is_kframe = lower > FRAME_TOL;
    let flat = spread <= FRAME_TOL * (1.0 + solution.values[solution.values.len() - 1]);
    let vanishes = solution.kernel_residual <= FRAME_TOL * (1.0 + s.frobenius_norm());
    let is_tight = is_kframe && flat && vanishes;
    Ok(KBoundsReport {
        lower,
        upper,
        is_kframe,
        is_tight,
        tight_constant: if is_tight { Some(lower) } else { None },
        lower_witness: solution.smallest_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::matrix::{inner, vec_norm};
    use approx::assert_abs_diff_eq;

    fn e(dim: usize, i: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[i] = Complex64::new(1.0, 0.0);
        v
    }

    fn onb2() -> FrameFamily {
        FrameFamily::new(2, vec![e(2, 0), e(2, 1)]).unwrap()
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(matches!(
            FrameFamily::new(2, vec![vec![Complex64::new(1.0, 0.0)]]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            FrameFamily::new(1, vec![vec![Complex64::new(f64::NAN, 0.0)]]),
            Err(Error::NonFinite)
        ));
        assert!(matches!(FrameFamily::new(0, vec![]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(FrameFamily::new(65, vec![]), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn orthonormal_basis_has_identity_operator() {
        let s = onb2().frame_operator();
        let i = ComplexMatrix::identity(2);
        assert!(s.sub(&i).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn repeated_vector_sums_outer_products() {
        let f = FrameFamily::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let s = f.frame_operator();
        assert_abs_diff_eq!(s.get(0, 0).re, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.get(1, 1).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.get(0, 1).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn three_equiangular_vectors_make_a_tight_frame() {
        let vecs: Vec<Vec<Complex64>> = [90.0_f64, 210.0, 330.0]
            .iter()
            .map(|deg| {
                let t = deg.to_radians();
                vec![Complex64::new(t.cos(), 0.0), Complex64::new(t.sin(), 0.0)]
            })
            .collect();
        let f = FrameFamily::new(2, vecs).unwrap();
        let report = frame_bounds(&f, None).unwrap();
        assert_abs_diff_eq!(report.lower, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(report.upper, 1.5, epsilon = 1e-12);
        assert!(report.is_frame);
    }

    #[test]
    fn bounds_of_unbalanced_family() {
        let f = FrameFamily::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let report = frame_bounds(&f, None).unwrap();
        assert_abs_diff_eq!(report.lower, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.upper, 2.0, epsilon = 1e-12);
        assert_eq!(report.subspace_dim, 2);
        // Witnesses attain their quotients.
        let s = f.frame_operator();
        let q_low = inner(&s.matvec(&report.lower_witness).unwrap(), &report.lower_witness).re;
        let q_high = inner(&s.matvec(&report.upper_witness).unwrap(), &report.upper_witness).re;
        assert_abs_diff_eq!(q_low, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(q_high, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(vec_norm(&report.lower_witness), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn single_vector_restricted_to_its_line_is_a_frame_there() {
        let f = FrameFamily::new(2, vec![e(2, 0)]).unwrap();
        let whole = frame_bounds(&f, None).unwrap();
        assert_abs_diff_eq!(whole.lower, 0.0, epsilon = 1e-14);
        assert!(!whole.is_frame);

        let line = ComplexMatrix::from_cols(&[e(2, 0)]).unwrap();
        let restricted = frame_bounds(&f, Some(&line)).unwrap();
        assert_abs_diff_eq!(restricted.lower, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(restricted.upper, 1.0, epsilon = 1e-12);
        assert!(restricted.is_frame);
        assert_eq!(restricted.subspace_dim, 1);
    }

    #[test]
    fn full_subspace_matches_unrestricted() {
        let f = FrameFamily::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let plain = frame_bounds(&f, None).unwrap();
        let full = frame_bounds(&f, Some(&ComplexMatrix::identity(2))).unwrap();
        assert_eq!(plain.lower, full.lower);
        assert_eq!(plain.upper, full.upper);
    }

    #[test]
    fn empty_family_and_zero_subspace_error() {
        let empty = FrameFamily::new(2, vec![]).unwrap();
        assert!(matches!(frame_bounds(&empty, None), Err(Error::EmptyFamily)));
        let f = onb2();
        let zero = ComplexMatrix::zeros(2, 1);
        assert!(matches!(frame_bounds(&f, Some(&zero)), Err(Error::ZeroSubspace)));
    }

    #[test]
    fn weighted_bounds_single_vector_projection_weight() {
        let f = FrameFamily::new(2, vec![e(2, 0)]).unwrap();
        let k = ComplexMatrix::diag_real(&[1.0, 0.0]).unwrap();
        let report = kframe_bounds(&f, &k).unwrap();
        assert_abs_diff_eq!(report.lower, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.upper, 1.0, epsilon = 1e-12);
        assert!(report.is_kframe);
        assert!(report.is_tight);
        assert_abs_diff_eq!(report.tight_constant.unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn identity_weight_reproduces_frame_bounds() {
        let f = FrameFamily::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let plain = frame_bounds(&f, None).unwrap();
        let weighted = kframe_bounds(&f, &ComplexMatrix::identity(2)).unwrap();
        assert_abs_diff_eq!(weighted.lower, plain.lower, epsilon = 1e-10);
        assert_abs_diff_eq!(weighted.upper, plain.upper, epsilon = 1e-10);
        assert!(weighted.is_kframe);
    }

    #[test]
    fn parseval_family_is_tight_for_identity_weight() {
        let report = kframe_bounds(&onb2(), &ComplexMatrix::identity(2)).unwrap();
        assert!(report.is_tight);
        assert_abs_diff_eq!(report.tight_constant.unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn leakage_outside_the_weight_range_breaks_tightness() {
        let half = vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)];
        let f = FrameFamily::new(2, vec![e(2, 0), half]).unwrap();
        let k = ComplexMatrix::diag_real(&[1.0, 0.0]).unwrap();
        let report = kframe_bounds(&f, &k).unwrap();
        assert_abs_diff_eq!(report.lower, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.upper, 1.0, epsilon = 1e-12);
        assert!(report.is_kframe);
        assert!(!report.is_tight);
        assert!(report.tight_constant.is_none());
    }

    #[test]
    fn zero_weight_is_rejected() {
        let k = ComplexMatrix::zeros(2, 2);
        assert!(matches!(kframe_bounds(&onb2(), &k), Err(Error::ZeroK)));
    }

    #[test]
    fn weighted_lower_witness_attains_the_quotient() {
        let f = FrameFamily::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let k = ComplexMatrix::diag_real(&[2.0, 1.0]).unwrap();
        let report = kframe_bounds(&f, &k).unwrap();
        let s = f.frame_operator();
        let kk = k.mul(&k.adjoint()).unwrap();
        let w = &report.lower_witness;
        let num = inner(&s.matvec(w).unwrap(), w).re;
        let den = inner(&kk.matvec(w).unwrap(), w).re;
        assert_abs_diff_eq!(num / den, report.lower, epsilon = 1e-8);
    }

    #[test]
    fn map_erase_subset_roundtrip() {
        let f = FrameFamily::new(2, vec![e(2, 0), e(2, 1), e(2, 0)]).unwrap();
        let t = ComplexMatrix::diag_real(&[3.0, 1.0]).unwrap();
        let mapped = f.map(&t).unwrap();
        assert_abs_diff_eq!(mapped.vector(0)[0].re, 3.0, epsilon = 1e-15);

        let erased = f.erased(&[1]).unwrap();
        assert_eq!(erased.len(), 2);
        assert_eq!(erased.vector(1)[0].re, 1.0);

        let picked = f.subset(&[2, 0]).unwrap();
        assert_eq!(picked.len(), 2);
        assert!(matches!(f.subset(&[5]), Err(Error::BadErasureIndex { index: 5, len: 3 })));
        assert!(matches!(f.erased(&[9]), Err(Error::BadErasureIndex { .. })));
    }

    #[test]
    fn zero_vectors_do_not_change_bounds() {
        let f = FrameFamily::new(2, vec![e(2, 0), e(2, 1)]).unwrap();
        let padded =
            FrameFamily::new(2, vec![e(2, 0), vec![Complex64::new(0.0, 0.0); 2], e(2, 1)]).unwrap();
        let a = frame_bounds(&f, None).unwrap();
        let b = frame_bounds(&padded, None).unwrap();
        assert_abs_diff_eq!(a.lower, b.lower, epsilon = 1e-14);
        assert_abs_diff_eq!(a.upper, b.upper, epsilon = 1e-14);
    }
}
