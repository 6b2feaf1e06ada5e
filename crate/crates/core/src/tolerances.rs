/// Numerical slack used across validation, spectral analysis, and branch
/// search. All values are strictly positive; the defaults suit matrices
/// with entries of order one, which is the regime of row-stochastic
/// matrices and their logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of a row sum from its target (1 for stochastic,
    /// 0 for row-zero) before the input is rejected.
    pub row_sum: f64,
    /// Negativity slack for entries that must be non-negative; anything
    /// in [-entry, 0) is treated as rounding noise and clamped.
    pub entry: f64,
    /// Relative eigenvalue gap below which two eigenvalues count as
    /// repeated.
    pub separation: f64,
    /// Relative distance from the closed negative real axis below which
    /// the principal logarithm is treated as undefined.
    pub axis: f64,
    /// Bound on the imaginary residue left by complex arithmetic in a
    /// computation whose exact result is real.
    pub reality: f64,
    /// Slack on the spectral sector boundary when deciding which log
    /// branches are admissible.
    pub sector: f64,
    /// Operator-norm mismatch above which a claimed witness generator is
    /// rejected as inconsistent with the input.
    pub witness: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            row_sum: 1e-9,
            entry: 1e-12,
            separation: 1e-8,
            axis: 1e-10,
            reality: 1e-8,
            sector: 1e-9,
            witness: 0.25,
        }
    }
}

impl Tolerances {
    /// True when every field is strictly positive, the only structural
    /// requirement. Callers that accept user-supplied overrides should
    /// check this before use.
    pub fn is_valid(&self) -> bool {
        self.row_sum > 0.0
            && self.entry > 0.0
            && self.separation > 0.0
            && self.axis > 0.0
            && self.reality > 0.0
            && self.sector > 0.0
            && self.witness > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(Tolerances::default().is_valid());
    }

    #[test]
    fn zero_field_is_invalid() {
        let tol = Tolerances {
            sector: 0.0,
            ..Tolerances::default()
        };
        assert!(!tol.is_valid());
    }
}
