//! Dense row-major complex matrices and small vector helpers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense matrix over complex double-precision scalars, row-major storage.
///
/// Construction validates shape and finiteness, so every value of this type
/// holds finite entries and at least one row and column.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch { rows, cols, len: entries.len() });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, entries })
    }

    // Internal constructor for entries already known to be finite.
    pub(crate) fn from_parts(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_parts(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Square diagonal matrix with the given complex diagonal.
    pub fn diag(values: &[Complex64]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::ShapeMismatch { rows: 0, cols: 0, len: 0 });
        }
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite);
            }
            m.entries[i * n + i] = *v;
        }
        Ok(m)
    }

    /// Square diagonal matrix with a real diagonal.
    pub fn diag_real(values: &[f64]) -> Result<Self> {
        let diag: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::diag(&diag)
    }

    /// Builds a matrix from a list of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::LengthMismatch { context: "rows have unequal lengths".into() });
        }
        let entries: Vec<Complex64> = rows.iter().flatten().copied().collect();
        Self::new(r, c, entries)
    }

    /// Builds a matrix from a list of columns.
    pub fn from_cols(cols: &[Vec<Complex64>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map(|col| col.len()).unwrap_or(0);
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::LengthMismatch { context: "columns have unequal lengths".into() });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); r * c];
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                entries[i * c + j] = z;
            }
        }
        Self::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: Complex64) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.get(r, c).conj();
            }
        }
        Self::from_parts(self.cols, self.rows, entries)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "cannot multiply {}x{} by {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    entries[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Self::new(self.rows, other.cols, entries)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "cannot combine {}x{} with {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        Self::new(self.rows, self.cols, self.entries.iter().map(|&z| z * factor).collect())
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: format!("matvec: {}x{} against vector of length {}", self.rows, self.cols, v.len()),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self.get(r, c) * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Adjoint-vector product `M* v` without forming the adjoint.
    pub fn adjoint_matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "adjoint matvec: {}x{} against vector of length {}",
                    self.rows, self.cols, v.len()
                ),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for r in 0..self.rows {
            let z = v[r];
            if z == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..self.cols {
                out[c] += self.get(r, c).conj() * z;
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance from the matrix to its own adjoint; zero for
    /// Hermitian input. Defined for square matrices only.
    pub fn hermitian_deviation(&self) -> f64 {
        debug_assert!(self.is_square());
        let n = self.rows;
        let mut sum = 0.0;
        for r in 0..n {
            for c in 0..n {
                let d = self.get(r, c) - self.get(c, r).conj();
                sum += d.norm_sqr();
            }
        }
        sum.sqrt()
    }

    /// Adds `scale * v v*` in place; `v` must have length `rows` of a square
    /// matrix. Accumulation is exactly Hermitian.
    pub(crate) fn add_outer(&mut self, v: &[Complex64], scale: f64) {
        debug_assert!(self.is_square());
        debug_assert_eq!(v.len(), self.rows);
        let n = self.rows;
        for r in 0..n {
            for c in 0..n {
                self.entries[r * n + c] += v[r] * v[c].conj() * scale;
            }
        }
    }
}

/// Inner product, linear in the first argument and conjugate-linear in the
/// second.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(&x, &y)| x * y.conj()).sum()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Returns `v / ‖v‖`, or `v` unchanged when the norm vanishes.
pub fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = vec_norm(v);
    if n == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|&z| z / n).collect()
}
