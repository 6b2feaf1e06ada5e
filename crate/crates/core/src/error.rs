use num_complex::Complex64;
use thiserror::Error;

/// Every way an analysis can fail. Validation errors mean the input is bad
/// data; the numerical errors mean the requested quantity is undefined or
/// cannot be computed reliably for this input.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("not a stochastic matrix: {reason}")]
    NotStochastic { reason: String },

    #[error("rows do not sum to zero: {reason}")]
    NotRowZero { reason: String },

    #[error("not a Markov generator: {reason}")]
    NotGenerator { reason: String },

    #[error("eigenvalue iteration did not converge within {max_iterations} iterations")]
    ConvergenceFailure { max_iterations: usize },

    #[error("operator norm {norm:.3e} exceeds the exponential overflow guard {limit:.1e}")]
    OverflowGuard { norm: f64, limit: f64 },

    #[error(
        "eigenvalue {eigenvalue} lies within {distance:.3e} of the closed negative real axis \
         (threshold {threshold:.3e}); the principal logarithm is undefined"
    )]
    SpectrumOnClosedNegativeAxis {
        eigenvalue: Complex64,
        distance: f64,
        threshold: f64,
    },

    #[error(
        "eigenvector basis condition {condition:.3e} is too large for a reliable \
         function evaluation"
    )]
    IllConditionedBasis { condition: f64 },

    #[error(
        "eigenvalues are not distinct: minimum gap {min_gap:.3e} is below the \
         separation threshold {threshold:.3e}"
    )]
    DegenerateSpectrum { min_gap: f64, threshold: f64 },

    #[error("matrix is numerically singular (smallest eigenvalue modulus {smallest:.3e})")]
    NotInvertible { smallest: f64 },

    #[error(
        "branch enumeration would visit {combinations} offset combinations \
         (cap {cap}); raise the cap or tighten the input"
    )]
    EnumerationOverflow { combinations: u128, cap: u128 },

    #[error(
        "exp of the claimed generator differs from the matrix by {mismatch:.3e} \
         in operator norm (witness tolerance {threshold:.3e})"
    )]
    WitnessMismatch { mismatch: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
