//! Projection of a row-zero matrix onto the generator cone by zeroing
//! negative off-diagonal entries and repairing the diagonal.
//!
//! The projection is optimal in the max-row-sum operator norm: the norm is
//! a maximum of independent per-row 1-norm costs, and within one row no
//! feasible change beats dropping the negative mass (cost l_N) and paying
//! for it again on the diagonal (another l_N).

use crate::error::Result;
use crate::linalg::expm::expm;
use crate::linalg::logm::logm_principal;
use crate::linalg::RealMatrix;
use crate::markov::{
    validate_generator, validate_row_zero, GeneratorMatrix, RowZeroMatrix, StochasticMatrix,
};
use crate::tolerances::Tolerances;

/// Split of one row into the off-diagonal entries the projection keeps
/// (nonnegative, including exact zeros) and the ones it clips (negative).
/// The row sums to zero, so `diagonal = clipped_mass - kept_mass`, and the
/// row's projection cost is exactly `2 * clipped_mass`.
#[derive(Debug, Clone, PartialEq)]
pub struct RowDecomposition {
    pub row_index: usize,
    pub entries: Vec<f64>,
    pub kept: Vec<usize>,
    pub clipped: Vec<usize>,
    /// Sum of the kept off-diagonal entries.
    pub kept_mass: f64,
    /// Absolute sum of the clipped off-diagonal entries.
    pub clipped_mass: f64,
}

pub fn decompose_row(l: &RowZeroMatrix, row_index: usize) -> RowDecomposition {
    let n = l.dim();
    let entries: Vec<f64> = (0..n).map(|j| l.get(row_index, j)).collect();
    let mut kept = Vec::new();
    let mut clipped = Vec::new();
    let mut kept_mass = 0.0;
    let mut clipped_mass = 0.0;
    for (j, &value) in entries.iter().enumerate() {
        if j == row_index {
            continue;
        }
        if value >= 0.0 {
            kept.push(j);
            kept_mass += value;
        } else {
            clipped.push(j);
            clipped_mass += -value;
        }
    }
    RowDecomposition {
        row_index,
        entries,
        kept,
        clipped,
        kept_mass,
        clipped_mass,
    }
}

#[derive(Debug, Clone)]
pub struct RegularizationResult {
    pub log: RowZeroMatrix,
    pub generator: GeneratorMatrix,
    /// op_norm(log - generator) = max over rows of 2 * clipped_mass.
    pub epsilon: f64,
    pub exp_error_actual: f64,
    pub exp_error_bound: f64,
}

/// Nearest generator to `l` in the max-row-sum norm.
pub fn diagonal_adjust(l: &RowZeroMatrix) -> GeneratorMatrix {
    let n = l.dim();
    let mut b = RealMatrix::zeros(n);
    for i in 0..n {
        let mut kept_mass = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let value = l.get(i, j).max(0.0);
            b.set(i, j, value);
            kept_mass += value;
        }
        b.set(i, i, -kept_mass);
    }
    validate_generator(&b, &Tolerances::default())
        .expect("clipped entries are nonnegative and rows sum to zero by construction")
}

/// How much worse `g` approximates `l` than the diagonal adjustment does.
/// Nonnegative up to rounding for every generator `g`.
pub fn optimality_gap(l: &RowZeroMatrix, g: &GeneratorMatrix) -> f64 {
    let best = l.as_real().sub(diagonal_adjust(l).as_real()).op_norm();
    l.as_real().sub(g.as_real()).op_norm() - best
}

/// Bound on op_norm(expm(l) - expm(diagonal_adjust(l))) in terms of the
/// projection cost: min{2, e^epsilon - 1}.
pub fn exp_error_bound(epsilon: f64) -> f64 {
    debug_assert!(epsilon >= 0.0);
    2f64.min(epsilon.exp() - 1.0)
}

/// Looser but more legible form of the same bound, min{2, 2 epsilon}.
pub fn exp_error_bound_loose(epsilon: f64) -> f64 {
    debug_assert!(epsilon >= 0.0);
    2f64.min(2.0 * epsilon)
}

/// Full pipeline: principal log, projection, and both error measures.
pub fn regularize(a: &StochasticMatrix, tol: &Tolerances) -> Result<RegularizationResult> {
    let log_raw = logm_principal(a.as_real(), tol)?;
    let log = validate_row_zero(&log_raw, tol)?;
    let generator = diagonal_adjust(&log);
    let epsilon = log.as_real().sub(generator.as_real()).op_norm();
    let adjusted = expm(generator.as_real())?;
    let exp_error_actual = a.as_real().sub(&adjusted).op_norm();
    Ok(RegularizationResult {
        log,
        generator,
        epsilon,
        exp_error_actual,
        exp_error_bound: exp_error_bound(epsilon),
    })
}
