//! Named matrix families used by the worked examples, the CLI self test,
//! and the test suites, so every consumer cites one source of truth.

use crate::linalg::expm::expm;
use crate::linalg::RealMatrix;
use crate::markov::{
    validate_generator, validate_row_zero, validate_stochastic, GeneratorMatrix, RowZeroMatrix,
    StochasticMatrix,
};
use crate::tolerances::Tolerances;

/// 3x3 chain with spectrum exactly {1, 0.32, 0.16}; its principal log has
/// one negative off-diagonal entry, so it is not embeddable.
pub fn three_state_example() -> StochasticMatrix {
    let m = RealMatrix::from_rows(&[
        vec![0.30, 0.45, 0.25],
        vec![0.14, 0.84, 0.02],
        vec![0.14, 0.52, 0.34],
    ])
    .expect("fixture is square and finite");
    validate_stochastic(&m, &Tolerances::default()).expect("fixture rows sum to one")
}

/// Symmetric 2x2 chain with spectrum {1, -1/3}: a negative eigenvalue of
/// odd multiplicity, the smallest refutation case.
pub fn two_state_example() -> StochasticMatrix {
    let m = RealMatrix::from_rows(&[vec![1.0 / 3.0, 2.0 / 3.0], vec![2.0 / 3.0, 1.0 / 3.0]])
        .expect("fixture is square and finite");
    validate_stochastic(&m, &Tolerances::default()).expect("fixture rows sum to one")
}

/// Circulant row-zero family with rows (-1-s, 1, s); a generator exactly
/// when s >= 0, with spectrum {0, -3(1+s)/2 +- (sqrt(3)(1-s)/2) i}.
pub fn circulant_family(s: f64) -> RowZeroMatrix {
    let m = RealMatrix::from_rows(&[
        vec![-1.0 - s, 1.0, s],
        vec![s, -1.0 - s, 1.0],
        vec![1.0, s, -1.0 - s],
    ])
    .expect("fixture is square and finite");
    validate_row_zero(&m, &Tolerances::default()).expect("rows cancel by construction")
}

/// Rate-c cycle through n states: c(P - I) for the cyclic shift P.
pub fn cyclic_generator(n: usize, c: f64) -> GeneratorMatrix {
    assert!(n >= 2, "a cycle needs at least two states");
    assert!(c > 0.0, "the rate must be positive");
    let m = RealMatrix::from_fn(n, |i, j| {
        if i == j {
            -c
        } else if j == (i + 1) % n {
            c
        } else {
            0.0
        }
    })
    .expect("fixture entries are finite");
    validate_generator(&m, &Tolerances::default()).expect("cycle rows cancel by construction")
}

/// The s below which exp(circulant_family(s)) stops being entrywise
/// nonnegative, located by bisection on [-1, 0] to within `tol`.
/// The exponential's minimum entry is increasing through the crossing, so
/// the sign predicate is monotone on the bracket.
pub fn positivity_threshold(tol: f64) -> f64 {
    assert!(tol > 0.0);
    let nonnegative = |s: f64| -> bool {
        let a = expm(circulant_family(s).as_real()).expect("family norm is small");
        let n = a.dim();
        (0..n).all(|i| (0..n).all(|j| a.get(i, j) >= 0.0))
    };
    debug_assert!(nonnegative(0.0));
    debug_assert!(!nonnegative(-1.0));

    let mut lo = -1.0;
    let mut hi = 0.0;
    let mut iterations = 0;
    while hi - lo > tol && iterations < 80 {
        let mid = 0.5 * (lo + hi);
        if nonnegative(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    0.5 * (lo + hi)
}
