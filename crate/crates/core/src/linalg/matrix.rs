use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A square real matrix with finite entries: the common currency of every
/// operation in this crate. Construction validates shape and finiteness;
/// everything downstream can then assume both.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    data: DMatrix<f64>,
}

impl RealMatrix {
    /// Builds a matrix from rows. Fails on ragged or non-square input and
    /// on NaN/infinite entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        let data = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Ok(Self { data })
    }

    /// Builds a matrix from a function of (row, col). The closure must
    /// produce finite values; this is checked.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let data = DMatrix::from_fn(n, n, f);
        for i in 0..n {
            for j in 0..n {
                if !data[(i, j)].is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(Self { data })
    }

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

    pub(crate) fn from_dmatrix(data: DMatrix<f64>) -> Self {
        debug_assert!(data.is_square());
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        debug_assert!(value.is_finite());
        self.data[(i, j)] = value;
    }

    pub fn scale_row(&mut self, i: usize, s: f64) {
        for j in 0..self.data.ncols() {
            self.data[(i, j)] *= s;
        }
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.data[(i, j)]).collect())
            .collect()
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// The operator norm used throughout: the maximum absolute row sum,
    /// i.e. the norm induced by the sup norm on row vectors.
    pub fn op_norm(&self) -> f64 {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.data[(i, j)].abs()).sum())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        self.data.trace()
    }

    /// Determinant via LU factorization with partial pivoting.
    pub fn det(&self) -> f64 {
        self.data.clone().lu().determinant()
    }

    pub fn transpose(&self) -> Self {
        Self {
            data: self.data.transpose(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            data: &self.data + &other.data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            data: &self.data - &other.data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            data: &self.data * &other.data,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: &self.data * s,
        }
    }

    /// self + s * I.
    pub fn add_scaled_identity(&self, s: f64) -> Self {
        let mut data = self.data.clone();
        for i in 0..data.nrows() {
            data[(i, i)] += s;
        }
        Self { data }
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.data[(i, j)] - other.data[(i, j)]).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_norm_of_zero_matrix_is_zero() {
        assert_eq!(RealMatrix::zeros(4).op_norm(), 0.0);
    }

    #[test]
    fn op_norm_is_the_max_absolute_row_sum() {
        let m = RealMatrix::from_rows(&[
            vec![-1.5272, 0.5991, 0.9281],
            vec![0.3054, -0.2371, -0.0683],
            vec![0.3054, 0.9023, -1.2078],
        ])
        .unwrap();
        // Row 0 dominates: 1.5272 + 0.5991 + 0.9281.
        assert!((m.op_norm() - 3.0544).abs() < 1e-3);
    }

    #[test]
    fn op_norm_of_any_stochastic_matrix_is_one() {
        let m = RealMatrix::from_rows(&[
            vec![0.30, 0.45, 0.25],
            vec![0.14, 0.84, 0.02],
            vec![0.14, 0.52, 0.34],
        ])
        .unwrap();
        assert!((m.op_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn construction_rejects_bad_shapes_and_values() {
        assert!(matches!(
            RealMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            RealMatrix::from_rows(&[vec![1.0, f64::NAN], vec![0.0, 1.0]]),
            Err(Error::NonFiniteEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn determinant_and_trace_match_hand_values() {
        let m = RealMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!((m.det() - 3.0).abs() < 1e-14);
        assert!((m.trace() - 4.0).abs() < 1e-14);
    }
}
