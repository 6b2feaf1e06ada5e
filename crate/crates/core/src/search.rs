//! Log-branch enumeration and the embeddability decision procedure.
//!
//! A real logarithm of A with distinct eigenvalues must act on each
//! eigenvalue as mu_r = Log lambda_r + 2 pi i k_r with conjugate-paired
//! integer offsets. Eigenvalues of a generator lie in the sector
//! |Im mu| <= -Re mu * cot(pi/n), which bounds the admissible offsets to a
//! finite set; enumerating it yields every candidate generator.

use num_complex::Complex64;

use crate::checks::{run_battery, CheckResult};
use crate::error::{Error, Result};
use crate::linalg::eigen::eigen_decompose;
use crate::linalg::expm::expm;
use crate::linalg::logm::logm_principal;
use crate::linalg::{ComplexMatrix, RealMatrix};
use crate::markov::{validate_generator, GeneratorMatrix, StochasticMatrix};
use crate::tolerances::Tolerances;

/// One real logarithm candidate of A.
#[derive(Debug, Clone)]
pub struct LogBranch {
    /// Offset k_r per eigenvalue, in the eigenvalue sort order; conjugate
    /// pairs carry opposite offsets, real eigenvalues carry 0.
    pub offsets: Vec<i64>,
    /// mu_r = Log lambda_r + 2 pi i k_r.
    pub mu: Vec<Complex64>,
    /// Real reconstruction V diag(mu) V^{-1}.
    pub matrix: RealMatrix,
    /// Whether the off-diagonal entries clear the entry tolerance.
    pub is_generator: bool,
    /// Per-eigenvalue sector slack (-Re mu) cot(pi/n) - |Im mu|; admissible
    /// branches have every entry >= -sector tolerance.
    pub sector_margins: Vec<f64>,
}

/// Caps on the branch search. `max_offset` truncates each eigenvalue's
/// offset range; `max_combinations` aborts searches whose offset product
/// is too large to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_offset: i64,
    pub max_combinations: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_offset: 64,
            max_combinations: 1 << 20,
        }
    }
}

/// Result of a branch search: the admissible branches in deterministic
/// order, and whether the search provably covered every admissible offset
/// combination (false when a limit truncated the range).
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub branches: Vec<LogBranch>,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddabilityStatus {
    Embeddable,
    NotEmbeddable,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessCertificate {
    /// The principal logarithm is the only possible generator.
    UniquePrincipal,
    /// Distinct spectrum and invertibility bound the generator count, but
    /// more than one may exist.
    AtMostFinite,
    Unknown,
}

/// What the verdict rests on: a failed necessary condition, a completed
/// search that found nothing, or (for embeddable inputs) the uniqueness
/// statement for the witness.
#[derive(Debug, Clone)]
pub enum VerdictCertificate {
    FailedCheck(CheckResult),
    ExhaustedEnumeration,
    Uniqueness(UniquenessCertificate),
}

#[derive(Debug, Clone)]
pub struct EmbeddabilityVerdict {
    pub status: EmbeddabilityStatus,
    pub witness: Option<GeneratorMatrix>,
    pub certificate: Option<VerdictCertificate>,
    /// Number of distinct generators actually exhibited.
    pub generator_count_lower_bound: usize,
    /// Set exactly when the status is Inconclusive.
    pub reason: Option<String>,
}

/// Quantities from the determinant/trace/norm/strip chain of sufficient
/// conditions for the principal log to be the only possible generator.
/// Condition indices: 0: e^{-pi} < det(A) <= 1; 1: -pi < tr(B) <= 0;
/// 2: ||B + beta I|| < pi; 3: Spec(B) inside the strip |Im| < pi.
#[derive(Debug, Clone)]
pub struct CuthbertDiagnostics {
    pub det_a: f64,
    pub trace_b: f64,
    pub beta: f64,
    pub norm_b_plus_beta: f64,
    pub spectral_strip_ok: bool,
    pub conditions: [bool; 4],
}

/// The principal log as a generator, when it is one.
pub fn principal_generator(
    a: &StochasticMatrix,
    tol: &Tolerances,
) -> Result<Option<GeneratorMatrix>> {
    let log = logm_principal(a.as_real(), tol)?;
    Ok(validate_generator(&log, tol).ok())
}

/// Inclusive admissible offset range for one conjugate pair: all k with
/// |theta + 2 pi k| <= bound, intersected with [-max_offset, max_offset].
/// Returns the range and whether the cap truncated it.
fn offset_range(theta: f64, bound: f64, max_offset: i64) -> (Vec<i64>, bool) {
    let two_pi = 2.0 * std::f64::consts::PI;
    let lo = ((-bound - theta) / two_pi).ceil() as i64;
    let hi = ((bound - theta) / two_pi).floor() as i64;
    if lo > hi {
        return (Vec::new(), false);
    }
    let truncated = lo < -max_offset || hi > max_offset;
    let lo = lo.max(-max_offset);
    let hi = hi.min(max_offset);
    ((lo..=hi).collect(), truncated)
}

pub fn enumerate_branches(a: &StochasticMatrix, tol: &Tolerances) -> Result<Enumeration> {
    enumerate_branches_with(a, tol, &SearchLimits::default())
}

pub fn enumerate_branches_with(
    a: &StochasticMatrix,
    tol: &Tolerances,
    limits: &SearchLimits,
) -> Result<Enumeration> {
    let n = a.dim();
    let norm_a = a.as_real().op_norm();
    let dec = eigen_decompose(a.as_real(), tol.separation)?;

    if !dec.is_distinct {
        let mut min_gap = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                min_gap = min_gap.min((dec.eigenvalues[i] - dec.eigenvalues[j]).norm());
            }
        }
        return Err(Error::DegenerateSpectrum {
            min_gap,
            threshold: tol.separation * norm_a,
        });
    }
    let smallest = dec
        .eigenvalues
        .iter()
        .map(|l| l.norm())
        .fold(f64::INFINITY, f64::min);
    if smallest <= tol.separation * norm_a {
        return Err(Error::NotInvertible { smallest });
    }

    let cot = 1.0 / (std::f64::consts::PI / n as f64).tan();

    // Principal log of each eigenvalue; conjugate pairs share their offset
    // variable (the positive-imaginary member enumerates k, its partner
    // takes -k). A real negative eigenvalue admits no real branch at all
    // when eigenvalues are distinct, so its range is empty.
    let principal_log: Vec<Complex64> = dec.eigenvalues.iter().map(|l| l.ln()).collect();
    let mut pair_of: Vec<Option<usize>> = vec![None; n];
    let mut exhaustive = true;
    struct Variable {
        index: usize,
        range: Vec<i64>,
    }
    let mut variables: Vec<Variable> = Vec::new();

    for (i, &lambda) in dec.eigenvalues.iter().enumerate() {
        if lambda.im > 0.0 {
            let partner = dec
                .eigenvalues
                .iter()
                .position(|&m| m == lambda.conj())
                .expect("conjugate partner exists for a real matrix");
            pair_of[i] = Some(partner);
            let theta = lambda.arg();
            let bound = -lambda.norm().ln() * cot + tol.sector;
            let (range, truncated) = offset_range(theta, bound, limits.max_offset);
            if truncated {
                exhaustive = false;
            }
            variables.push(Variable { index: i, range });
        } else if lambda.im == 0.0 && lambda.re < 0.0 {
            variables.push(Variable {
                index: i,
                range: Vec::new(),
            });
        }
        // Real positive eigenvalues keep offset 0; negative-imaginary
        // members follow their partner.
    }

    let combinations = variables
        .iter()
        .try_fold(1u128, |acc, v| acc.checked_mul(v.range.len() as u128))
        .unwrap_or(u128::MAX);
    if combinations > limits.max_combinations {
        return Err(Error::EnumerationOverflow {
            combinations,
            cap: limits.max_combinations,
        });
    }

    let v_inv = dec
        .eigenvectors
        .try_inverse()
        .expect("distinct invertible spectrum yields an invertible eigenvector basis");

    let mut branches: Vec<LogBranch> = Vec::new();
    let mut selection = vec![0usize; variables.len()];
    let mut exhausted = variables.iter().any(|v| v.range.is_empty());

    'outer: while !exhausted {
        // Assemble offsets for this selection.
        let mut offsets = vec![0i64; n];
        for (v, &s) in variables.iter().zip(&selection) {
            let k = v.range[s];
            offsets[v.index] = k;
            if let Some(p) = pair_of[v.index] {
                offsets[p] = -k;
            }
        }

        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let mu: Vec<Complex64> = principal_log
            .iter()
            .zip(&offsets)
            .map(|(&l, &k)| l + two_pi_i * k as f64)
            .collect();

        let sector_margins: Vec<f64> = mu.iter().map(|m| -m.re * cot - m.im.abs()).collect();
        let admissible = sector_margins.iter().all(|&s| s >= -tol.sector);

        if admissible {
            // Reconstruct V diag(mu) V^{-1}.
            let mut scaled = dec.eigenvectors.as_dmatrix().clone();
            for (j, &m) in mu.iter().enumerate() {
                for i in 0..n {
                    scaled[(i, j)] *= m;
                }
            }
            let log_c = ComplexMatrix::from_dmatrix(scaled).mul(&v_inv);
            if log_c.max_imag_abs() <= tol.reality * (1.0 + norm_a) {
                let matrix = log_c.real_part();
                let is_generator = (0..n).all(|i| {
                    (0..n).all(|j| i == j || matrix.get(i, j) >= -tol.entry)
                });
                branches.push(LogBranch {
                    offsets,
                    mu,
                    matrix,
                    is_generator,
                    sector_margins,
                });
            }
        }

        // Advance the mixed-radix selection counter.
        exhausted = true;
        for pos in (0..variables.len()).rev() {
            selection[pos] += 1;
            if selection[pos] < variables[pos].range.len() {
                exhausted = false;
                continue 'outer;
            }
            selection[pos] = 0;
        }
    }

    branches.sort_by(|a, b| {
        let sa: u64 = a.offsets.iter().map(|k| k.unsigned_abs()).sum();
        let sb: u64 = b.offsets.iter().map(|k| k.unsigned_abs()).sum();
        sa.cmp(&sb).then_with(|| a.offsets.cmp(&b.offsets))
    });

    Ok(Enumeration {
        branches,
        exhaustive,
    })
}

pub fn uniqueness_certificate(a: &StochasticMatrix, tol: &Tolerances) -> UniquenessCertificate {
    let n = a.dim();
    let dec = match eigen_decompose(a.as_real(), tol.separation) {
        Ok(dec) => dec,
        Err(_) => return UniquenessCertificate::Unknown,
    };
    if !dec.is_distinct {
        return UniquenessCertificate::Unknown;
    }

    let modulus_floor = (-std::f64::consts::PI * (std::f64::consts::PI / n as f64).tan()).exp();
    let all_above = dec.eigenvalues.iter().all(|l| l.norm() > modulus_floor);
    let det = a.as_real().det();
    if all_above || det > (-std::f64::consts::PI).exp() {
        return UniquenessCertificate::UniquePrincipal;
    }

    let smallest = dec
        .eigenvalues
        .iter()
        .map(|l| l.norm())
        .fold(f64::INFINITY, f64::min);
    if smallest > tol.separation * a.as_real().op_norm() {
        UniquenessCertificate::AtMostFinite
    } else {
        UniquenessCertificate::Unknown
    }
}

pub fn decide_embeddable(a: &StochasticMatrix, tol: &Tolerances) -> EmbeddabilityVerdict {
    decide_embeddable_with(a, tol, &SearchLimits::default())
}

pub fn decide_embeddable_with(
    a: &StochasticMatrix,
    tol: &Tolerances,
    limits: &SearchLimits,
) -> EmbeddabilityVerdict {
    let battery = run_battery(a, tol);
    let principal = principal_generator(a, tol);
    let enumeration = enumerate_branches_with(a, tol, limits);

    // Constructive witness first: the principal log if it qualifies, else
    // the first enumerated generator branch.
    let mut witness: Option<GeneratorMatrix> = None;
    if let Ok(Some(g)) = &principal {
        witness = Some(g.clone());
    }
    let mut enumerated_generators = 0usize;
    if let Ok(en) = &enumeration {
        for branch in &en.branches {
            if branch.is_generator {
                if let Ok(g) = validate_generator(&branch.matrix, tol) {
                    enumerated_generators += 1;
                    if witness.is_none() {
                        witness = Some(g);
                    }
                }
            }
        }
    }

    if let Some(g) = witness {
        return EmbeddabilityVerdict {
            status: EmbeddabilityStatus::Embeddable,
            witness: Some(g),
            certificate: Some(VerdictCertificate::Uniqueness(uniqueness_certificate(
                a, tol,
            ))),
            generator_count_lower_bound: enumerated_generators.max(1),
            reason: None,
        };
    }

    if let Ok(results) = &battery {
        if let Some(failed) = results.iter().find(|r| !r.passed) {
            return EmbeddabilityVerdict {
                status: EmbeddabilityStatus::NotEmbeddable,
                witness: None,
                certificate: Some(VerdictCertificate::FailedCheck(failed.clone())),
                generator_count_lower_bound: 0,
                reason: None,
            };
        }
    }

    match &enumeration {
        Ok(en) if en.exhaustive => EmbeddabilityVerdict {
            status: EmbeddabilityStatus::NotEmbeddable,
            witness: None,
            certificate: Some(VerdictCertificate::ExhaustedEnumeration),
            generator_count_lower_bound: 0,
            reason: None,
        },
        Ok(_) => EmbeddabilityVerdict {
            status: EmbeddabilityStatus::Inconclusive,
            witness: None,
            certificate: None,
            generator_count_lower_bound: 0,
            reason: Some("branch search truncated by offset limits".to_string()),
        },
        Err(e) => {
            let reason = match e {
                Error::DegenerateSpectrum { .. } => {
                    "repeated eigenvalues: branch enumeration does not apply".to_string()
                }
                Error::NotInvertible { .. } => {
                    "singular matrix: no logarithm exists".to_string()
                }
                other => format!("branch search failed: {other}"),
            };
            let reason = match &principal {
                Err(Error::SpectrumOnClosedNegativeAxis { .. }) => format!(
                    "{reason}; principal logarithm undefined (spectrum meets the closed negative axis)"
                ),
                Err(other) => format!("{reason}; principal logarithm failed: {other}"),
                Ok(_) => reason,
            };
            EmbeddabilityVerdict {
                status: EmbeddabilityStatus::Inconclusive,
                witness: None,
                certificate: None,
                generator_count_lower_bound: 0,
                reason: Some(reason),
            }
        }
    }
}

pub fn cuthbert_diagnostics(
    a: &StochasticMatrix,
    b: &GeneratorMatrix,
    tol: &Tolerances,
) -> Result<CuthbertDiagnostics> {
    let exp_b = expm(b.as_real())?;
    let mismatch = exp_b.sub(a.as_real()).op_norm();
    if mismatch > tol.witness {
        return Err(Error::WitnessMismatch {
            mismatch,
            threshold: tol.witness,
        });
    }

    let det_a = a.as_real().det();
    let trace_b = b.as_real().trace();
    let beta = b.rate_bound();
    let norm_b_plus_beta = b.nonnegative_shift().op_norm();

    let dec = eigen_decompose(b.as_real(), tol.separation)?;
    let pi = std::f64::consts::PI;
    let spectral_strip_ok = dec.eigenvalues.iter().all(|l| l.im.abs() < pi);

    let conditions = [
        (-pi).exp() < det_a && det_a <= 1.0 + tol.entry,
        -pi < trace_b && trace_b <= 0.0,
        norm_b_plus_beta < pi,
        spectral_strip_ok,
    ];
    // Chain of implications; the first link presumes det(A) = e^{tr B},
    // which holds to the extent the witness matches.
    debug_assert!(!conditions[0] || conditions[1]);
    debug_assert!(!conditions[1] || conditions[2]);
    debug_assert!(!conditions[2] || conditions[3]);

    Ok(CuthbertDiagnostics {
        det_a,
        trace_b,
        beta,
        norm_b_plus_beta,
        spectral_strip_ok,
        conditions,
    })
}
