//! Self-checks for the frozen test oracles (reference LP solver, samplers,
//! pinned constants). These tests exercise the oracles against hand-worked
//! instances only; nothing here touches the library under test.

mod common;

use common::{lp, pinned, sampler};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn simplex_solves_hand_worked_instances() {
    // min x0 + x1  s.t.  x0 - x1 = 3  ->  3 at (3, 0).
    let lp1 = lp::StandardLp {
        a: vec![vec![1.0, -1.0]],
        b: vec![3.0],
        c: vec![1.0, 1.0],
    };
    let (v, x) = lp::solve(&lp1).unwrap();
    assert!((v - 3.0).abs() < 1e-9);
    assert!((x[0] - 3.0).abs() < 1e-9 && x[1].abs() < 1e-9);

    // min -2x0 - 3x1  s.t.  x0 + x1 + s0 = 4, x0 + 3x1 + s1 = 6
    // -> vertex (3, 1), value -9.
    let lp2 = lp::StandardLp {
        a: vec![
            vec![1.0, 1.0, 1.0, 0.0],
            vec![1.0, 3.0, 0.0, 1.0],
        ],
        b: vec![4.0, 6.0],
        c: vec![-2.0, -3.0, 0.0, 0.0],
    };
    let (v, x) = lp::solve(&lp2).unwrap();
    assert!((v + 9.0).abs() < 1e-9);
    assert!((x[0] - 3.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);

    // Degenerate rhs: min x0  s.t.  x0 - x1 = 0, x0 + x1 = 2 -> 1 at (1, 1).
    let lp3 = lp::StandardLp {
        a: vec![vec![1.0, -1.0], vec![1.0, 1.0]],
        b: vec![0.0, 2.0],
        c: vec![1.0, 0.0],
    };
    let (v, _) = lp::solve(&lp3).unwrap();
    assert!((v - 1.0).abs() < 1e-9);

    // Infeasible: x0 = -1 with x0 >= 0.
    let lp4 = lp::StandardLp {
        a: vec![vec![1.0]],
        b: vec![-1.0],
        c: vec![1.0],
    };
    assert!(lp::solve(&lp4).is_none());

    // Unbounded: min -x0 with a free direction (x0 - x1 = 1).
    let lp5 = lp::StandardLp {
        a: vec![vec![1.0, -1.0]],
        b: vec![1.0],
        c: vec![-1.0, 0.0],
    };
    assert!(lp::solve(&lp5).is_none());
}

#[test]
fn row_projection_cost_matches_hand_solutions() {
    // Row (-2, 3, -1), diagonal at 0. Zeroing the negative off-diagonal
    // costs 1, and absorbing it into the (free) diagonal costs 1 more.
    let cost = lp::min_row_adjustment_cost(&[-2.0, 3.0, -1.0], 0);
    assert!((cost - 2.0).abs() < 1e-9, "cost = {cost}");

    // A generator row is already feasible: zero cost.
    let cost = lp::min_row_adjustment_cost(&[0.7, -1.2, 0.5], 1);
    assert!(cost.abs() < 1e-9, "cost = {cost}");

    // Hand-worked: row (0.3, -0.5, 0.2), diagonal at 1 (already zero-sum,
    // all off-diagonals nonnegative): cost 0.
    let cost = lp::min_row_adjustment_cost(&[0.3, -0.5, 0.2], 1);
    assert!(cost.abs() < 1e-9, "cost = {cost}");

    // Hand-worked: row (-0.1, 0.4, -0.3), diagonal at 1. Optimal g zeroes
    // both negative off-diagonals (cost 0.4) and moves the diagonal from
    // 0.4 to 0 (cost 0.4): total 0.8.
    let cost = lp::min_row_adjustment_cost(&[-0.1, 0.4, -0.3], 1);
    assert!((cost - 0.8).abs() < 1e-9, "cost = {cost}");
}

#[test]
fn samplers_produce_the_documented_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=8 {
        for _ in 0..50 {
            let rows = sampler::generator_rows(n, &mut rng);
            for (i, row) in rows.iter().enumerate() {
                let sum: f64 = row.iter().sum();
                assert!(sum.abs() < 1e-12, "row sum {sum}");
                let offsum: f64 = -row[i];
                assert!(
                    (0.25 - 1e-12..0.6 + 1e-12).contains(&offsum),
                    "off-diagonal sum {offsum}"
                );
                for (j, &v) in row.iter().enumerate() {
                    if j != i {
                        assert!(v > 0.0, "off-diagonal {v} not strictly positive");
                    }
                }
            }
        }
    }
    for n in 2..=6 {
        for _ in 0..50 {
            let rows = sampler::row_zero_rows(n, &mut rng);
            for row in &rows {
                let sum: f64 = row.iter().sum();
                assert!(sum.abs() < 1e-12, "row sum {sum}");
            }
        }
    }
}

#[test]
fn pinned_constants_are_internally_consistent() {
    // The pinned tables are themselves consistent: rows of A sum to 1,
    // rows of the log and adjustment tables sum to roughly 0 (they are
    // rounded to four decimals), epsilon is twice the zeroed entry, and
    // the bound equals exp(epsilon) - 1.
    for row in pinned::THREE_STATE_A {
        assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
    for row in pinned::THREE_STATE_LOG {
        assert!(row.iter().sum::<f64>().abs() < 5e-4);
    }
    for row in pinned::THREE_STATE_ADJUSTED {
        assert!(row.iter().sum::<f64>().abs() < 5e-4);
    }
    for row in pinned::THREE_STATE_REGULARIZED {
        assert!((row.iter().sum::<f64>() - 1.0).abs() < 5e-4);
    }
    assert!((pinned::THREE_STATE_EPSILON - 2.0 * 0.0683).abs() < 1e-4);
    assert!(
        (pinned::THREE_STATE_EXP_ERROR_BOUND - (pinned::THREE_STATE_EPSILON.exp() - 1.0)).abs()
            < 1e-12
    );
    assert!(pinned::THREE_STATE_EXP_ERROR_ACTUAL <= pinned::THREE_STATE_EXP_ERROR_BOUND);
    assert!(pinned::THREE_STATE_MAX_ENTRY_DIFF < 0.036);
    assert!((pinned::E_NEG_PI - (-std::f64::consts::PI).exp()).abs() < 1e-16);
    assert!((pinned::CYCLIC3_EIG_IM - 2.0 * 3.0_f64.sqrt()).abs() < 1e-15);
    assert!(
        (pinned::CYCLIC3_PRINCIPAL_OFF_DIAGONALS[0] + pinned::CYCLIC3_PRINCIPAL_OFF_DIAGONALS[1]
            - 4.0)
            .abs()
            < 1e-12
    );
    // Spiral-region data: theta = sqrt(3) * 1.3 / 2, modulus = e^{-1.05},
    // bound = exp(-theta * tan(pi/3)).
    assert!((pinned::CIRCULANT_S03_THETA - 3.0_f64.sqrt() * 1.3 / 2.0).abs() < 1e-15);
    assert!((pinned::CIRCULANT_S03_MODULUS - (-1.05_f64).exp()).abs() < 1e-15);
    let bound = (-pinned::CIRCULANT_S03_THETA * (std::f64::consts::PI / 3.0).tan()).exp();
    assert!((pinned::CIRCULANT_S03_BOUND - bound).abs() < 1e-12);
    assert!(pinned::CIRCULANT_S03_MODULUS > pinned::CIRCULANT_S03_BOUND);
    assert!((pinned::SIGMA_FULL - pinned::SIGMA_REFERENCE).abs() < 1e-4);
    // Five-state eigenvalue table: 4(cos(2 pi j / 5) - 1) +- 4 sin(2 pi j / 5) i.
    for (j, (re, im)) in pinned::CYCLIC5_EIGENVALUES.iter().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * j as f64 / 5.0;
        assert!((re - 4.0 * (angle.cos() - 1.0)).abs() < 5e-5);
        assert!((im - 4.0 * angle.sin()).abs() < 5e-5);
    }
}
