//! Validated domain types. A raw matrix enters the analysis only through
//! these constructors, which reject bad data outright and repair rounding
//! noise (tiny negative entries, row sums off by less than the row-sum
//! tolerance), recording how much each row moved.

use crate::error::{Error, Result};
use crate::linalg::RealMatrix;
use crate::tolerances::Tolerances;

/// A row-stochastic matrix: non-negative entries, rows summing to 1.
/// After repair every entry is >= 0 and each row is rescaled to sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    base: RealMatrix,
    repairs: Vec<f64>,
}

/// A real matrix whose rows sum to zero: the ambient space in which
/// logarithms of stochastic matrices live.
#[derive(Debug, Clone, PartialEq)]
pub struct RowZeroMatrix {
    base: RealMatrix,
}

/// A Markov generator: row sums zero, off-diagonal entries non-negative
/// (hence diagonal entries non-positive). After repair the off-diagonals
/// are clamped to >= 0 and each diagonal entry is set to the exact negated
/// sum of its row's off-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    base: RowZeroMatrix,
    repairs: Vec<f64>,
}

fn max_abs_row_move(before: &RealMatrix, after: &RealMatrix, i: usize) -> f64 {
    (0..before.dim())
        .map(|j| (after.get(i, j) - before.get(i, j)).abs())
        .fold(0.0, f64::max)
}

pub fn validate_stochastic(raw: &RealMatrix, tol: &Tolerances) -> Result<StochasticMatrix> {
    let n = raw.dim();
    for i in 0..n {
        for j in 0..n {
            let x = raw.get(i, j);
            if x < -tol.entry {
                return Err(Error::NotStochastic {
                    reason: format!("entry ({i}, {j}) = {x} is negative beyond tolerance"),
                });
            }
        }
        let sum: f64 = (0..n).map(|j| raw.get(i, j)).sum();
        if (sum - 1.0).abs() > tol.row_sum {
            return Err(Error::NotStochastic {
                reason: format!("row {i} sums to {sum}, not 1"),
            });
        }
    }

    // Clamp rounding-noise negatives, then rescale each row to sum 1. The
    // residual left by the scaling is folded into the largest entry, and a
    // final closure pins the last entry so the row sum is exactly 1.0 and
    // revalidation is a no-op.
    let mut repaired = RealMatrix::from_fn(n, |i, j| raw.get(i, j).max(0.0))
        .expect("clamping preserves finiteness");
    for i in 0..n {
        let row_sum = |m: &RealMatrix| -> f64 { (0..n).map(|j| m.get(i, j)).sum() };
        let arg_max = |m: &RealMatrix, upto: usize| -> usize {
            (0..upto)
                .max_by(|&a, &b| m.get(i, a).partial_cmp(&m.get(i, b)).unwrap())
                .unwrap()
        };

        if row_sum(&repaired) != 1.0 {
            repaired.scale_row(i, 1.0 / row_sum(&repaired));
        }
        for _ in 0..4 {
            let s = row_sum(&repaired);
            if s == 1.0 {
                break;
            }
            let j = arg_max(&repaired, n);
            repaired.set(i, j, repaired.get(i, j) + (1.0 - s));
        }
        // The incremental fold can stall a few ulps away when additions
        // round to no-ops. Closing at the last position is exact: with
        // prefix > 0, fl(1 - prefix) is within half an ulp of 1.0 of the
        // true residue, so prefix + fl(1 - prefix) rounds to exactly 1.0.
        if n > 1 && row_sum(&repaired) != 1.0 {
            for _ in 0..4 {
                let prefix: f64 = (0..n - 1).map(|j| repaired.get(i, j)).sum();
                let candidate = 1.0 - prefix;
                if candidate >= 0.0 {
                    repaired.set(i, n - 1, candidate);
                    break;
                }
                // The leading entries alone overshoot 1; pull the excess
                // out of the largest one and retry.
                let j = arg_max(&repaired, n - 1);
                repaired.set(i, j, (repaired.get(i, j) - (prefix - 1.0)).max(0.0));
            }
        }
    }
    let repairs = (0..n).map(|i| max_abs_row_move(raw, &repaired, i)).collect();

    Ok(StochasticMatrix {
        base: repaired,
        repairs,
    })
}

pub fn validate_row_zero(raw: &RealMatrix, tol: &Tolerances) -> Result<RowZeroMatrix> {
    let n = raw.dim();
    for i in 0..n {
        let sum: f64 = (0..n).map(|j| raw.get(i, j)).sum();
        if sum.abs() > tol.row_sum {
            return Err(Error::NotRowZero {
                reason: format!("row {i} sums to {sum}, not 0"),
            });
        }
    }
    Ok(RowZeroMatrix { base: raw.clone() })
}

pub fn validate_generator(raw: &RealMatrix, tol: &Tolerances) -> Result<GeneratorMatrix> {
    let n = raw.dim();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = raw.get(i, j);
            if x < -tol.entry {
                return Err(Error::NotGenerator {
                    reason: format!(
                        "off-diagonal entry ({i}, {j}) = {x} is negative beyond tolerance"
                    ),
                });
            }
        }
        let sum: f64 = (0..n).map(|j| raw.get(i, j)).sum();
        if sum.abs() > tol.row_sum {
            return Err(Error::NotGenerator {
                reason: format!("row {i} sums to {sum}, not 0"),
            });
        }
    }

    // Clamp off-diagonal noise, then let the diagonal absorb the row-sum
    // residual so the invariant holds machine-exactly.
    let mut repaired = RealMatrix::from_fn(n, |i, j| {
        if i == j {
            raw.get(i, j)
        } else {
            raw.get(i, j).max(0.0)
        }
    })
    .expect("clamping preserves finiteness");
    for i in 0..n {
        let off_sum: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| repaired.get(i, j))
            .sum();
        repaired.set(i, i, -off_sum);
    }
    let repairs = (0..n).map(|i| max_abs_row_move(raw, &repaired, i)).collect();

    Ok(GeneratorMatrix {
        base: RowZeroMatrix { base: repaired },
        repairs,
    })
}

impl StochasticMatrix {
    pub fn as_real(&self) -> &RealMatrix {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.base.get(i, j)
    }

    /// Largest entry adjustment made to each row during repair.
    pub fn row_repairs(&self) -> &[f64] {
        &self.repairs
    }
}

impl RowZeroMatrix {
    pub fn as_real(&self) -> &RealMatrix {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.base.get(i, j)
    }
}

impl GeneratorMatrix {
    pub fn as_row_zero(&self) -> &RowZeroMatrix {
        &self.base
    }

    pub fn as_real(&self) -> &RealMatrix {
        self.base.as_real()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.base.get(i, j)
    }

    pub fn row_repairs(&self) -> &[f64] {
        &self.repairs
    }

    /// Largest diagonal magnitude: the uniform rate bound delta such that
    /// the generator plus delta times the identity is entrywise
    /// non-negative.
    pub fn rate_bound(&self) -> f64 {
        let n = self.dim();
        (0..n).map(|i| self.get(i, i).abs()).fold(0.0, f64::max)
    }

    /// The non-negative matrix obtained by shifting the diagonal up by the
    /// rate bound.
    pub fn nonnegative_shift(&self) -> RealMatrix {
        self.as_real().add_scaled_identity(self.rate_bound())
    }
}
