//! Analysis of finite-state Markov chains observed at a fixed time step.
//!
//! Given a row-stochastic transition matrix, this crate decides whether it
//! can be realized as `exp(t Q)` of a continuous-time Markov generator,
//! enumerates every candidate generator when the spectrum is distinct, and
//! when none exists produces the closest generator obtainable by adjusting
//! the logarithm row by row, with a computable error bound.

pub mod checks;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod markov;
pub mod regularize;
pub mod search;
pub mod tolerances;

pub use error::{Error, Result};
pub use markov::{
    validate_generator, validate_row_zero, validate_stochastic, GeneratorMatrix, RowZeroMatrix,
    StochasticMatrix,
};
pub use regularize::{
    decompose_row, diagonal_adjust, exp_error_bound, exp_error_bound_loose, optimality_gap,
    regularize, RegularizationResult, RowDecomposition,
};
pub use search::{
    cuthbert_diagnostics, decide_embeddable, decide_embeddable_with, enumerate_branches,
    enumerate_branches_with, principal_generator, uniqueness_certificate, CuthbertDiagnostics,
    EmbeddabilityStatus, EmbeddabilityVerdict, Enumeration, LogBranch, SearchLimits,
    UniquenessCertificate, VerdictCertificate,
};
pub use tolerances::Tolerances;
