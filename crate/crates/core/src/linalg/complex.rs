use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::RealMatrix;

/// A square complex matrix. Complex arithmetic only appears as an
/// intermediate representation (eigenvector bases, triangular forms, branch
/// reconstruction); results handed back to callers are real matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    data: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            data: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            data: DMatrix::identity(n, n),
        }
    }

    pub fn from_real(m: &RealMatrix) -> Self {
        let n = m.dim();
        Self {
            data: DMatrix::from_fn(n, n, |i, j| Complex64::new(m.get(i, j), 0.0)),
        }
    }

    pub(crate) fn from_dmatrix(data: DMatrix<Complex64>) -> Self {
        debug_assert!(data.is_square());
        Self { data }
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    #[cfg(test)]
    pub(crate) fn as_dmatrix_mut(&mut self) -> &mut DMatrix<Complex64> {
        &mut self.data
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    /// Maximum absolute row sum, the complex counterpart of the real
    /// operator norm.
    pub fn op_norm(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.data[(i, j)].norm()).sum())
            .fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            data: &self.data * &other.data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            data: &self.data - &other.data,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            data: &self.data * s,
        }
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self {
            data: self.data.adjoint(),
        }
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.data.clone().try_inverse().map(|data| Self { data })
    }

    /// Largest |imaginary part| over all entries; how far the matrix is
    /// from being real.
    pub fn max_imag_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_entry_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Drops the imaginary parts. Callers must check `max_imag_abs` first;
    /// this is the final step of computations that are real in exact
    /// arithmetic.
    pub fn real_part(&self) -> RealMatrix {
        let n = self.dim();
        RealMatrix::from_fn(n, |i, j| self.data[(i, j)].re)
            .expect("finite real part of a finite complex matrix")
    }
}
