//! Frozen reference values for the bundled examples.
//!
//! The four-decimal matrices are the published reference tables for the
//! three-state worked example; the full-precision scalars were computed
//! once with an independent numerical stack (NumPy/SciPy) and pinned here
//! before the library was implemented. Tests compare against these values;
//! they must never be regenerated from the code under test.

/// The three-state worked example A (exact decimal entries).
pub const THREE_STATE_A: [[f64; 3]; 3] = [
    [0.30, 0.45, 0.25],
    [0.14, 0.84, 0.02],
    [0.14, 0.52, 0.34],
];

/// Its eigenvalues, exact by construction.
pub const THREE_STATE_EIGENVALUES: [f64; 3] = [1.0, 0.32, 0.16];

/// det(A) = 1 * 0.32 * 0.16, exact.
pub const THREE_STATE_DET: f64 = 0.0512;

/// Principal logarithm of A, reference table to four decimals.
pub const THREE_STATE_LOG: [[f64; 3]; 3] = [
    [-1.5272, 0.5991, 0.9281],
    [0.3054, -0.2371, -0.0683],
    [0.3054, 0.9023, -1.2078],
];

/// Diagonal adjustment of the logarithm, reference table to four decimals.
pub const THREE_STATE_ADJUSTED: [[f64; 3]; 3] = [
    [-1.5272, 0.5991, 0.9281],
    [0.3054, -0.3054, 0.0],
    [0.3054, 0.9023, -1.2078],
];

/// exp of the adjusted generator, reference table to four decimals.
pub const THREE_STATE_REGULARIZED: [[f64; 3]; 3] = [
    [0.3000, 0.4383, 0.2617],
    [0.1400, 0.8046, 0.0554],
    [0.1400, 0.5057, 0.3543],
];

/// op-norm distance from the log to its diagonal adjustment (= 2 * 0.0683...,
/// SciPy full precision).
pub const THREE_STATE_EPSILON: f64 = 0.13664184798108714;

/// exp(epsilon) - 1 at the value above.
pub const THREE_STATE_EXP_ERROR_BOUND: f64 = 0.1464174832483474;

/// op-norm of A - exp(adjusted), SciPy full precision.
pub const THREE_STATE_EXP_ERROR_ACTUAL: f64 = 0.07083596280605714;

/// Largest entrywise |A - exp(adjusted)|, SciPy full precision; the
/// published claim is that this stays below 0.036.
pub const THREE_STATE_MAX_ENTRY_DIFF: f64 = 0.035417981403028564;

/// exp(-pi), the determinant threshold in the uniqueness certificate.
pub const E_NEG_PI: f64 = 0.04321391826377225;

/// Off-diagonal values of the principal log of exp(cyclic_generator(3, 4)),
/// reference values to four decimals. Together with the diagonal -4 they
/// form a second, distinct generator of the same matrix.
pub const CYCLIC3_PRINCIPAL_OFF_DIAGONALS: [f64; 2] = [0.3724, 3.6276];

/// Imaginary part of the nonzero eigenvalue pair of cyclic_generator(3, 4):
/// 2 * sqrt(3).
pub const CYCLIC3_EIG_IM: f64 = 3.4641016151377544;

/// Eigenvalues of cyclic_generator(5, 4) as (re, |im|) pairs, reference
/// values to four decimals: 0 and two conjugate pairs.
pub const CYCLIC5_EIGENVALUES: [(f64, f64); 3] =
    [(0.0, 0.0), (-2.7639, 3.8042), (-7.2361, 2.3511)];

/// Published approximate threshold for the circulant family: exp of the
/// family member stays entrywise nonnegative exactly for s >= sigma.
pub const SIGMA_REFERENCE: f64 = -0.5712;

/// SciPy bisection of the same predicate to 15 digits.
pub const SIGMA_FULL: f64 = -0.5712173453799112;

/// Spiral-region data for exp(circulant_family(-0.3)) (n = 3): nontrivial
/// eigenvalue modulus e^{-1.05}, |argument| sqrt(3)*1.3/2, and the bound
/// exp(-theta*tan(pi/3)) = e^{-1.95} exactly. The modulus exceeds the
/// bound, certifying non-embeddability.
pub const CIRCULANT_S03_MODULUS: f64 = 0.3499377491111553;
pub const CIRCULANT_S03_THETA: f64 = 1.12583302491977;
pub const CIRCULANT_S03_BOUND: f64 = 0.1422740715865136;
