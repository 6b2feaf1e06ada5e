//! Seeded random matrix families for the soundness and optimality sweeps.
//!
//! The generator family is deliberately conservative so that the sweep
//! criteria are deterministic properties of the distribution, not luck:
//! every off-diagonal entry is strictly positive (no reducible chains, no
//! zero-pattern edge cases) and each row's off-diagonal sum d_i lies in
//! [0.25, 0.6]. Each Gershgorin disk is centered at -d_i with radius d_i,
//! so |Im spec(G)| <= 0.6 and even t = 5 keeps |Im spec(t*G)| <= 3 < pi:
//! the principal strip and negative-axis guards hold with a wide margin.
//!
//! Frozen test oracle: independent of the library under test (raw rows
//! only; callers run them through the public validators).

use rand::Rng;

/// One random generator-matrix candidate as raw rows: off-diagonals are
/// U(0.1, 1) rescaled so the row's off-diagonal sum is U(0.25, 0.6); the
/// diagonal is the exact negated sum.
pub fn generator_rows<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0.0; n];
        let mut raw = 0.0;
        for (j, v) in row.iter_mut().enumerate() {
            if j != i {
                *v = rng.gen_range(0.1..1.0);
                raw += *v;
            }
        }
        let target = rng.gen_range(0.25..0.6);
        let mut sum = 0.0;
        for (j, v) in row.iter_mut().enumerate() {
            if j != i {
                *v *= target / raw;
                sum += *v;
            }
        }
        row[i] = -sum;
        rows.push(row);
    }
    rows
}

/// One random row-zero matrix as raw rows: off-diagonals U(-1, 1) with the
/// diagonal repairing the row sum to exactly the negated off-diagonal sum.
/// Roughly half the off-diagonals are negative, so these are almost never
/// generators.
pub fn row_zero_rows<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0.0; n];
        let mut sum = 0.0;
        for (j, v) in row.iter_mut().enumerate() {
            if j != i {
                *v = rng.gen_range(-1.0..1.0);
                sum += *v;
            }
        }
        row[i] = -sum;
        rows.push(row);
    }
    rows
}
