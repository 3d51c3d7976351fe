//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! Sweeps zero one off-diagonal pair at a time with a complex plane
//! rotation; convergence is declared when the off-diagonal Frobenius mass
//! drops below `1e-12` of the matrix norm, with a hard cap of 100 sweeps.
//! Dense and unconditionally stable for the dimensions this crate caps at.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::matrix::ComplexMatrix;
use crate::DIM_CAP;

/// Relative off-diagonal mass at which a sweep sequence stops.
const OFF_DIAG_TOL: f64 = 1e-12;
/// Hard cap on Jacobi sweeps.
const MAX_SWEEPS: usize = 100;
/// Modulus below which a leading eigenvector component is not used to fix
/// the phase.
const PHASE_TOL: f64 = 1e-8;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigResult {
    /// Real eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, column `j` paired with `values[j]`.
    /// Each column's first component of modulus above a small threshold is
    /// rotated to the positive real axis, making the output deterministic.
    pub vectors: ComplexMatrix,
}

/// Diagonalizes a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when the Hermitian deviation exceeds
/// `tol * (1 + ‖M‖_F)`, and with [`Error::DimensionCap`] beyond the dense
/// cap. The decomposition satisfies `M ≈ V diag(values) V*`.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<EigResult> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            context: format!("eigendecomposition needs a square matrix, got {}x{}", m.rows(), m.cols()),
        });
    }
    let n = m.rows();
    if n > DIM_CAP {
        return Err(Error::DimensionCap { dim: n, cap: DIM_CAP });
    }
    let norm = m.frobenius_norm();
    let deviation = m.hermitian_deviation();
    if deviation > tol * (1.0 + norm) {
        return Err(Error::NotHermitian { deviation });
    }

    // Work on the Hermitian part; for valid input this only removes rounding
    // asymmetry.
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for r in 0..n {
        for c in 0..n {
            a[r * n + c] = (m.get(r, c) + m.get(c, r).conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let target = OFF_DIAG_TOL * norm;
    for _ in 0..MAX_SWEEPS {
        if off_diag_mass(&a, n) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    // Diagonal is real for Hermitian input; sort ascending, stably.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.partial_cmp(&a[j * n + j].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();

    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for &j in &order {
        cols.push(canonical_phase(v.column(j)));
    }
    Ok(EigResult { values, vectors: ComplexMatrix::from_cols(&cols)? })
}

fn off_diag_mass(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[r * n + c].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
///
/// With the Hermitian 2x2 block `[[α, β], [conj(β), γ]]` and `β = b e^{iφ}`,
/// the classic real-symmetric angle formulas apply to `b` after factoring
/// the phase into the rotation.
fn rotate(a: &mut [Complex64], v: &mut ComplexMatrix, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let u = apq / b; // e^{iφ}
    let alpha = a[p * n + p].re;
    let gamma = a[q * n + q].re;
    let theta = (gamma - alpha) / (2.0 * b);
    // Small root of t² − 2θt − 1 = 0, the zeroing condition for this
    // rotation orientation; taking the small root keeps |t| ≤ 1 for
    // stability.
    let sign = if theta < 0.0 { -1.0 } else { 1.0 };
    let t = -sign / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let sigma = t * c;
    let s = sigma * u.conj();
    let s_bar = sigma * u;

    // Columns p, q of A: A <- A U with U = [[c, -s̄], [s, c]].
    for r in 0..n {
        let arp = a[r * n + p];
        let arq = a[r * n + q];
        a[r * n + p] = arp * c + arq * s;
        a[r * n + q] = arp * (-s_bar) + arq * c;
    }
    // Rows p, q of A: A <- U* A.
    for col in 0..n {
        let apc = a[p * n + col];
        let aqc = a[q * n + col];
        a[p * n + col] = apc * c + aqc * s_bar;
        a[q * n + col] = apc * (-s) + aqc * c;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

    // Accumulate the rotation into the eigenvector matrix: V <- V U.
    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, vrp * c + vrq * s);
        v.set(r, q, vrp * (-s_bar) + vrq * c);
    }
}

/// Rotates a unit column so its first component of modulus above
/// [`PHASE_TOL`] becomes real and positive.
fn canonical_phase(mut col: Vec<Complex64>) -> Vec<Complex64> {
    let pick = col
        .iter()
        .position(|z| z.norm() > PHASE_TOL)
        .or_else(|| {
            // Degenerate column: fall back to the largest component.
            let mut best = None;
            let mut best_norm = 0.0;
            for (i, z) in col.iter().enumerate() {
                if z.norm() > best_norm {
                    best_norm = z.norm();
                    best = Some(i);
                }
            }
            best
        });
    if let Some(k) = pick {
        let z = col[k];
        let r = z.norm();
        if r > 0.0 {
            let factor = z.conj() / r;
            for entry in col.iter_mut() {
                *entry *= factor;
            }
            col[k] = Complex64::new(col[k].re, 0.0);
        }
    }
    col
}
