//! Seeded generators for random vectors, matrices, and structured operators.
//!
//! Every generator takes an explicit RNG so callers control reproducibility;
//! [`seeded_rng`] builds the stream cipher RNG used throughout the crate.
//! Distributions are rotation invariant (complex Gaussian entries), which
//! keeps the generated families free of accidental axis alignment.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::numeric::matrix::ComplexMatrix;
use crate::numeric::svd::{complete_basis, orthonormalize_columns};

/// Deterministic RNG from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: independent real and imaginary parts with
/// variance 1/2, so `E|z|² = 1`.
pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniformly random unit vector (Gaussian direction, normalized).
pub fn random_unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|z| z / norm).collect();
        }
    }
}

/// Matrix with independent standard complex Gaussian entries.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    let entries: Vec<Complex64> = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, entries)
}

/// Haar-like random unitary: Gram–Schmidt applied to a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> Result<ComplexMatrix> {
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
        .collect();
    orthonormalize_columns(&mut cols);
    // A Gaussian matrix is singular only on a null set; completing with
    // standard basis vectors keeps the function total.
    complete_basis(&mut cols, dim, dim);
    ComplexMatrix::from_cols(&cols)
}

/// Random matrix with the prescribed singular values: `U diag(s) V*` for
/// independent random unitaries `U`, `V`.
pub fn random_with_spectrum<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    spectrum: &[f64],
) -> Result<ComplexMatrix> {
    let u = random_unitary(rng, rows)?;
    let v = random_unitary(rng, cols)?;
    let mut core = ComplexMatrix::zeros(rows, cols);
    for (i, &s) in spectrum.iter().enumerate().take(rows.min(cols)) {
        core.set(i, i, Complex64::new(s, 0.0));
    }
    u.mul(&core)?.mul(&v.adjoint())
}

/// Random square matrix with singular values drawn uniformly from
/// `[0.5, 2]`, hence safely invertible and well conditioned.
pub fn random_invertible<R: Rng>(rng: &mut R, dim: usize) -> Result<ComplexMatrix> {
    let spectrum: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.5..2.0)).collect();
    random_with_spectrum(rng, dim, dim, &spectrum)
}

/// Family of `count` Gaussian vectors in dimension `dim`.
pub fn random_family<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Vec<Vec<Complex64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
        .collect()
}

/// Family of `count` vectors of the form `K g` with Gaussian `g`, hence all
/// lying in the range of `K`.
pub fn random_family_in_range<R: Rng>(
    rng: &mut R,
    k: &ComplexMatrix,
    count: usize,
) -> Vec<Vec<Complex64>> {
    (0..count)
        .map(|_| {
            let g: Vec<Complex64> = (0..k.cols()).map(|_| complex_gaussian(rng)).collect();
            // The coefficient vector is built to the operator's width, so
            // the product cannot fail.
            k.matvec(&g).expect("coefficient length matches operator width")
        })
        .collect()
}
