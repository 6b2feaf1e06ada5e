//! Randomized and algebraic invariants for every module, driven by seeded
//! generators so failures reproduce exactly. The reference LP solver and
//! the matrix samplers live in `common` and know nothing about the library
//! internals.

mod common;

use common::{lp, sampler};
use markov_embed::checks::{check_runnenberg, run_battery};
use markov_embed::fixtures::cyclic_generator;
use markov_embed::linalg::{eigen_decompose, expm, logm_principal, RealMatrix};
use markov_embed::regularize::{diagonal_adjust, decompose_row, optimality_gap};
use markov_embed::search::{
    decide_embeddable, enumerate_branches, uniqueness_certificate, EmbeddabilityStatus,
    UniquenessCertificate, VerdictCertificate,
};
use markov_embed::{
    validate_generator, validate_row_zero, validate_stochastic, GeneratorMatrix, Tolerances,
};
use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matrix_from(rows: Vec<Vec<f64>>) -> RealMatrix {
    RealMatrix::from_rows(&rows).unwrap()
}

fn random_generator(n: usize, rng: &mut ChaCha8Rng) -> GeneratorMatrix {
    let rows = sampler::generator_rows(n, rng);
    validate_generator(&matrix_from(rows), &Tolerances::default()).unwrap()
}

#[test]
fn log_exp_round_trip_on_random_generators() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 3..=6 {
        for _ in 0..40 {
            let g = random_generator(n, &mut rng);
            let a = expm(g.as_real()).unwrap();
            let log = logm_principal(&a, &tol).unwrap();
            let err = log.sub(g.as_real()).op_norm();
            assert!(
                err < 1e-6 * (1.0 + g.as_real().op_norm()),
                "round trip error {err} at n={n}"
            );
        }
    }
}

#[test]
fn exp_determinant_equals_exponential_of_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=6 {
        for _ in 0..40 {
            let m = matrix_from(sampler::row_zero_rows(n, &mut rng));
            let det = expm(&m).unwrap().det();
            let expected = m.trace().exp();
            assert!(
                (det - expected).abs() <= 1e-9 * expected.abs(),
                "det {det} vs e^trace {expected} at n={n}"
            );
        }
    }
}

#[test]
fn spectrum_is_invariant_under_permutation_similarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 3..=6 {
        for _ in 0..20 {
            let g = random_generator(n, &mut rng);
            // Rotate state labels by one: row/column i -> i+1 mod n.
            let permuted = RealMatrix::from_fn(n, |i, j| {
                g.get((i + n - 1) % n, (j + n - 1) % n)
            })
            .unwrap();
            let eigs = eigen_decompose(g.as_real(), 1e-8).unwrap().eigenvalues;
            let eigs_p = eigen_decompose(&permuted, 1e-8).unwrap().eigenvalues;
            let scale = 1.0 + g.as_real().op_norm();
            for (a, b) in eigs.iter().zip(&eigs_p) {
                assert!((a - b).norm() < 1e-9 * scale, "{a} vs {b}");
            }
        }
    }
}

#[test]
fn semigroup_snapshots_validate_with_zero_second_pass_repair() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 3..=8 {
        for _ in 0..12 {
            let g = random_generator(n, &mut rng);
            for t in [0.1, 1.0, 5.0] {
                let a = validate_stochastic(&expm(&g.as_real().scale(t)).unwrap(), &tol)
                    .unwrap_or_else(|e| panic!("t={t} n={n}: {e}"));
                let again = validate_stochastic(a.as_real(), &tol).unwrap();
                assert!(again.row_repairs().iter().all(|&r| r == 0.0));
            }
        }
    }
}

#[test]
fn battery_passes_on_every_semigroup_snapshot() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut count = 0;
    while count < 1000 {
        let n = 3 + (count % 6);
        let g = random_generator(n, &mut rng);
        for t in [0.1, 1.0, 5.0] {
            let a = validate_stochastic(&expm(&g.as_real().scale(t)).unwrap(), &tol).unwrap();
            let results = run_battery(&a, &tol).unwrap();
            for r in &results {
                assert!(r.passed, "check {} failed at n={n}, t={t}", r.name.as_str());
            }
        }
        count += 1;
    }
}

#[test]
fn runnenberg_data_agree_on_conjugate_pairs() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut inputs = vec![
        validate_stochastic(&expm(cyclic_generator(5, 4.0).as_real()).unwrap(), &tol).unwrap(),
    ];
    for n in 3..=6 {
        let g = random_generator(n, &mut rng);
        inputs.push(validate_stochastic(&expm(g.as_real()).unwrap(), &tol).unwrap());
    }
    for a in &inputs {
        let (_, data) = check_runnenberg(a, &tol).unwrap();
        for d in &data {
            if d.lambda.im != 0.0 {
                let partner = data
                    .iter()
                    .find(|p| p.lambda == d.lambda.conj())
                    .expect("conjugate eigenvalue present");
                assert_eq!(d.r, partner.r);
                assert_eq!(d.theta, partner.theta);
                assert_eq!(d.bound, partner.bound);
            }
        }
    }
}

#[test]
fn branches_of_the_cycle_family_are_sound_and_commute() {
    let tol = Tolerances::default();
    for c in [3.8, 4.0, 4.5] {
        let b = cyclic_generator(3, c);
        let a = validate_stochastic(&expm(b.as_real()).unwrap(), &tol).unwrap();
        let en = enumerate_branches(&a, &tol).unwrap();
        assert_eq!(en.branches.len(), 2, "c={c}");
        let n = a.dim() as f64;
        for br in &en.branches {
            let residual = expm(&br.matrix).unwrap().sub(a.as_real()).op_norm();
            assert!(residual < 1e-7 * n, "c={c}: residual {residual}");
        }
        for (i, b1) in en.branches.iter().enumerate() {
            for b2 in &en.branches[i + 1..] {
                let comm = b1.matrix.mul(&b2.matrix).sub(&b2.matrix.mul(&b1.matrix));
                let limit = 1e-7
                    * (1.0 + b1.matrix.op_norm())
                    * (1.0 + b2.matrix.op_norm());
                assert!(comm.op_norm() < limit, "c={c}: commutator {}", comm.op_norm());
            }
        }
    }
}

#[test]
fn enumeration_recovers_interior_generators() {
    let tol = Tolerances::default();
    let cot = 1.0 / (std::f64::consts::PI / 3.0).tan();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 60 && attempts < 400 {
        attempts += 1;
        let g = random_generator(3, &mut rng);
        let dec = eigen_decompose(g.as_real(), tol.separation).unwrap();
        let interior = dec.eigenvalues.iter().all(|m| {
            m.norm() < 1e-12 || m.im.abs() < -m.re * cot - 1e-6
        });
        if !interior || !dec.is_distinct {
            continue;
        }
        accepted += 1;

        let a = validate_stochastic(&expm(g.as_real()).unwrap(), &tol).unwrap();
        let en = enumerate_branches(&a, &tol).unwrap();
        assert!(
            en.branches
                .iter()
                .any(|br| br.matrix.max_abs_diff(g.as_real()) < 1e-6),
            "no branch recovers the generator"
        );
        let verdict = decide_embeddable(&a, &tol);
        assert_eq!(verdict.status, EmbeddabilityStatus::Embeddable);
    }
    assert!(accepted >= 30, "only {accepted} interior samples in {attempts}");
}

#[test]
fn unique_principal_certificate_caps_the_generator_list() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for n in 3..=5 {
        for _ in 0..20 {
            let g = random_generator(n, &mut rng);
            let a = validate_stochastic(&expm(g.as_real()).unwrap(), &tol).unwrap();
            if uniqueness_certificate(&a, &tol) != UniquenessCertificate::UniquePrincipal {
                continue;
            }
            let en = enumerate_branches(&a, &tol).unwrap();
            let generators: Vec<_> = en.branches.iter().filter(|b| b.is_generator).collect();
            assert!(generators.len() <= 1);
            if let Some(only) = generators.first() {
                let principal = logm_principal(a.as_real(), &tol).unwrap();
                assert!(only.matrix.max_abs_diff(&principal) < 1e-8);
            }
        }
    }
}

#[test]
fn embeddable_verdicts_carry_uniqueness_certificates() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..30 {
        let g = random_generator(4, &mut rng);
        let a = validate_stochastic(&expm(g.as_real()).unwrap(), &tol).unwrap();
        let verdict = decide_embeddable(&a, &tol);
        assert_eq!(verdict.status, EmbeddabilityStatus::Embeddable);
        assert!(matches!(
            verdict.certificate,
            Some(VerdictCertificate::Uniqueness(_))
        ));
        assert!(verdict.witness.is_some());
    }
}

#[test]
fn reference_lp_confirms_per_row_projection_costs() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for case in 0..60 {
        let n = 2 + (case % 5);
        let rows = sampler::row_zero_rows(n, &mut rng);
        let l = validate_row_zero(&matrix_from(rows.clone()), &tol).unwrap();
        let b = diagonal_adjust(&l);

        let mut max_row_cost = 0.0;
        for (i, row) in rows.iter().enumerate() {
            let d = decompose_row(&l, i);
            let oracle = lp::min_row_adjustment_cost(row, i);
            assert!(
                (oracle - 2.0 * d.clipped_mass).abs() < 1e-9,
                "row {i}: oracle {oracle} vs 2*l_N {}",
                2.0 * d.clipped_mass
            );
            max_row_cost = f64::max(max_row_cost, 2.0 * d.clipped_mass);
        }
        let epsilon = l.as_real().sub(b.as_real()).op_norm();
        assert!((epsilon - max_row_cost).abs() < 1e-12);

        let challenger = random_generator(n, &mut rng);
        assert!(optimality_gap(&l, &challenger) >= -1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Positive rows with entry noise below the tolerance budget validate,
    // repairs stay within (row_sum + entry), and revalidation is exact.
    #[test]
    fn noisy_stochastic_rows_validate_within_repair_budget(
        n in 2usize..=6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = Tolerances::default();
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            let mut row: Vec<f64> = raw.iter().map(|v| v / sum).collect();
            for v in row.iter_mut() {
                *v += rng.gen_range(-1e-11..1e-11);
            }
            rows.push(row);
        }
        let a = validate_stochastic(&matrix_from(rows), &tol).unwrap();
        let budget = tol.row_sum + tol.entry;
        prop_assert!(a.row_repairs().iter().all(|&r| r <= budget));
        let again = validate_stochastic(a.as_real(), &tol).unwrap();
        prop_assert!(again.row_repairs().iter().all(|&r| r == 0.0));
        prop_assert_eq!(again.as_real().max_abs_diff(a.as_real()), 0.0);
    }

    // Same contract for generators: sub-tolerance negative off-diagonal
    // noise is clamped, never amplified.
    #[test]
    fn noisy_generator_rows_validate_within_repair_budget(
        n in 2usize..=6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = Tolerances::default();
        let mut rows = sampler::generator_rows(n, &mut rng);
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i != j && rng.gen_bool(0.3) {
                    *v = -rng.gen_range(0.0..1e-13);
                }
            }
            row[i] = -(row
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v)
                .sum::<f64>());
        }
        let g = validate_generator(&matrix_from(rows), &tol).unwrap();
        let budget = tol.row_sum + tol.entry;
        prop_assert!(g.row_repairs().iter().all(|&r| r <= budget));
        let again = validate_generator(g.as_real(), &tol).unwrap();
        prop_assert!(again.as_real().max_abs_diff(g.as_real()) == 0.0);
    }
}
