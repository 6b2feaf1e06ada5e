//! Necessary conditions for embeddability. Each check is one-sided: a
//! failure proves the matrix is not the exponential of any generator, a
//! pass proves nothing. The battery runs the five checks in a fixed order
//! so reports are reproducible.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::eigen::{eigen_decompose, SpectralDecomposition};
use crate::markov::StochasticMatrix;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    DetRange,
    NegativeSpectrumParity,
    PositivityTransitivity,
    Elfving,
    Runnenberg,
}

impl CheckName {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::DetRange => "det_range",
            CheckName::NegativeSpectrumParity => "negative_spectrum_parity",
            CheckName::PositivityTransitivity => "positivity_transitivity",
            CheckName::Elfving => "elfving",
            CheckName::Runnenberg => "runnenberg",
        }
    }
}

/// Structured witness attached to a check outcome. Failing checks always
/// carry one; some passing checks attach informative data as well.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Determinant value (attached pass or fail).
    Determinant { value: f64 },
    /// Offending eigenvalue (zero mode, odd negative cluster, or modulus
    /// violation).
    Eigenvalue { lambda: Complex64 },
    /// Negative-axis cluster with odd total count.
    SpectralCluster { lambda: Complex64, count: usize },
    /// First index triple violating transitivity of positivity.
    IndexTriple { i: usize, j: usize, k: usize },
    /// Eigenvalue outside the spectral sector: its modulus exceeds the
    /// angle-dependent bound.
    SectorViolation {
        lambda: Complex64,
        modulus: f64,
        bound: f64,
    },
    /// The check does not apply at this dimension.
    Inapplicable { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: CheckName,
    pub passed: bool,
    pub certificate: Option<Certificate>,
    /// Signed distance to the pass/fail boundary in the check's own scale;
    /// see each check for the convention.
    pub margin: f64,
}

/// Modulus, absolute argument, and sector bound for one eigenvalue. The
/// bound exp(-theta tan(pi/n)) comes from the straight-segment part of the
/// Karpelevic region boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunnenbergDatum {
    pub lambda: Complex64,
    pub r: f64,
    pub theta: f64,
    pub bound: f64,
}

/// The raw determinant predicate: embeddable matrices satisfy
/// 0 < det <= 1 (det = e^{trace of the generator} with trace <= 0); the
/// upper bound carries entry-tolerance slack. Exposed separately so the
/// det > 1 regime, which cannot be reached through a validated stochastic
/// matrix in this direction, is still testable.
pub fn det_in_range(det: f64, tol: &Tolerances) -> (bool, f64) {
    let margin = det.min(1.0 + tol.entry - det);
    (det > 0.0 && det <= 1.0 + tol.entry, margin)
}

pub fn check_det_range(a: &StochasticMatrix, tol: &Tolerances) -> CheckResult {
    let det = a.as_real().det();
    let (passed, margin) = det_in_range(det, tol);
    CheckResult {
        name: CheckName::DetRange,
        passed,
        certificate: Some(Certificate::Determinant { value: det }),
        margin,
    }
}

/// Eigenvalues on the negative real axis must pair up: each cluster of
/// (numerically) equal negative eigenvalues needs even count, and no
/// eigenvalue may sit at zero. Margin is the smallest modulus minus the
/// zero-detection radius when the parity holds; on a parity failure it is
/// minus the distance from the odd cluster to its nearest potential
/// partner (or to zero if there is none).
fn spectrum_parity_with(dec: &SpectralDecomposition, norm_a: f64, tol: &Tolerances) -> CheckResult {
    let name = CheckName::NegativeSpectrumParity;
    let radius = tol.separation * norm_a;

    let mut min_modulus = f64::INFINITY;
    let mut zero_mode: Option<Complex64> = None;
    for &lambda in &dec.eigenvalues {
        let m = lambda.norm();
        if m < min_modulus {
            min_modulus = m;
        }
        if m < radius && zero_mode.is_none() {
            zero_mode = Some(lambda);
        }
    }
    if let Some(lambda) = zero_mode {
        return CheckResult {
            name,
            passed: false,
            certificate: Some(Certificate::Eigenvalue { lambda }),
            margin: min_modulus - radius,
        };
    }

    // Negative-axis eigenvalues, most negative first.
    let mut negatives: Vec<Complex64> = dec
        .eigenvalues
        .iter()
        .copied()
        .filter(|l| l.im.abs() < tol.axis && l.re < -tol.axis)
        .collect();
    negatives.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());

    let mut idx = 0;
    while idx < negatives.len() {
        let start = idx;
        while idx < negatives.len() && negatives[idx].re - negatives[start].re <= radius {
            idx += 1;
        }
        let count = idx - start;
        if count % 2 == 1 {
            let lambda = negatives[start];
            let nearest_other = negatives
                .iter()
                .enumerate()
                .filter(|&(k, _)| k < start || k >= idx)
                .map(|(_, l)| (l.re - lambda.re).abs())
                .fold(f64::INFINITY, f64::min);
            let margin = if nearest_other.is_finite() {
                -nearest_other
            } else {
                lambda.re
            };
            return CheckResult {
                name,
                passed: false,
                certificate: Some(Certificate::SpectralCluster { lambda, count }),
                margin,
            };
        }
    }

    CheckResult {
        name,
        passed: true,
        certificate: None,
        margin: min_modulus - radius,
    }
}

pub fn check_zero_and_negative_spectrum(
    a: &StochasticMatrix,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let dec = eigen_decompose(a.as_real(), tol.separation)?;
    Ok(spectrum_parity_with(&dec, a.as_real().op_norm(), tol))
}

/// If state i can reach j in one step and j can reach k, then i must reach
/// k in one step too, because A = exp(B) makes every transition pattern
/// transitive. Margin is the smallest A_{i,k} - entry tolerance over all
/// triples whose premise holds.
pub fn check_positivity_transitivity(a: &StochasticMatrix, tol: &Tolerances) -> CheckResult {
    let n = a.dim();
    let name = CheckName::PositivityTransitivity;
    let mut margin = 1.0;
    let mut worst: Option<(usize, usize, usize)> = None;

    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) <= tol.entry {
                continue;
            }
            for k in 0..n {
                if a.get(j, k) <= tol.entry {
                    continue;
                }
                let slack = a.get(i, k) - tol.entry;
                if slack < margin {
                    margin = slack;
                    if slack <= 0.0 && worst.is_none() {
                        worst = Some((i, j, k));
                    }
                }
            }
        }
    }

    CheckResult {
        name,
        passed: worst.is_none(),
        certificate: worst.map(|(i, j, k)| Certificate::IndexTriple { i, j, k }),
        margin,
    }
}

/// Every eigenvalue other than the Perron root must lie strictly inside
/// the unit circle. Eigenvalues within the separation tolerance of 1 are
/// exempt (they are the Perron root's cluster); margin is the smallest
/// 1 - entry_tol - |lambda| over the rest, or 1 when all are exempt.
fn elfving_with(dec: &SpectralDecomposition, tol: &Tolerances) -> CheckResult {
    let name = CheckName::Elfving;
    let mut margin = 1.0;
    let mut worst: Option<Complex64> = None;

    for &lambda in &dec.eigenvalues {
        if (lambda - Complex64::new(1.0, 0.0)).norm() <= tol.separation {
            continue;
        }
        let slack = 1.0 - tol.entry - lambda.norm();
        if slack < margin {
            margin = slack;
            if slack <= 0.0 {
                worst = Some(lambda);
            }
        }
    }

    CheckResult {
        name,
        passed: worst.is_none(),
        certificate: worst.map(|lambda| Certificate::Eigenvalue { lambda }),
        margin,
    }
}

pub fn check_elfving(a: &StochasticMatrix, tol: &Tolerances) -> Result<CheckResult> {
    let dec = eigen_decompose(a.as_real(), tol.separation)?;
    Ok(elfving_with(&dec, tol))
}

/// Spectral sector bound: an eigenvalue at angle theta can have modulus at
/// most exp(-theta tan(pi/n)). Only meaningful for n >= 3; n = 2 passes
/// with an inapplicability marker. The margin min(bound - r) is <= 0 for
/// every stochastic matrix (the Perron root sits exactly on the boundary),
/// so pass/fail uses the sector slack, not the margin sign.
fn runnenberg_with(
    dec: &SpectralDecomposition,
    n: usize,
    tol: &Tolerances,
) -> (CheckResult, Vec<RunnenbergDatum>) {
    let name = CheckName::Runnenberg;
    if n == 2 {
        return (
            CheckResult {
                name,
                passed: true,
                certificate: Some(Certificate::Inapplicable {
                    reason: "sector bound requires at least three states".to_string(),
                }),
                margin: 1.0,
            },
            Vec::new(),
        );
    }

    let tan_factor = (std::f64::consts::PI / n as f64).tan();
    let mut data = Vec::with_capacity(dec.eigenvalues.len());
    let mut margin = f64::INFINITY;
    let mut worst: Option<&RunnenbergDatum> = None;

    for &lambda in &dec.eigenvalues {
        let r = lambda.norm();
        let theta = lambda.arg().abs();
        let bound = (-theta * tan_factor).exp();
        data.push(RunnenbergDatum {
            lambda,
            r,
            theta,
            bound,
        });
    }
    for datum in &data {
        let slack = datum.bound - datum.r;
        if slack < margin {
            margin = slack;
        }
    }
    let passed = data.iter().all(|d| d.r <= d.bound + tol.sector);
    if !passed {
        worst = data
            .iter()
            .filter(|d| d.r > d.bound + tol.sector)
            .min_by(|a, b| (a.bound - a.r).partial_cmp(&(b.bound - b.r)).unwrap());
    }

    let certificate = worst.map(|d| Certificate::SectorViolation {
        lambda: d.lambda,
        modulus: d.r,
        bound: d.bound,
    });
    (
        CheckResult {
            name,
            passed,
            certificate,
            margin,
        },
        data,
    )
}

pub fn check_runnenberg(
    a: &StochasticMatrix,
    tol: &Tolerances,
) -> Result<(CheckResult, Vec<RunnenbergDatum>)> {
    let dec = eigen_decompose(a.as_real(), tol.separation)?;
    Ok(runnenberg_with(&dec, a.dim(), tol))
}

/// Runs the five checks in fixed order: determinant range, negative
/// spectrum parity, positivity transitivity, Elfving, Runnenberg. The
/// spectrum is computed once and shared.
pub fn run_battery(a: &StochasticMatrix, tol: &Tolerances) -> Result<Vec<CheckResult>> {
    let det = check_det_range(a, tol);
    let dec = eigen_decompose(a.as_real(), tol.separation)?;
    let norm_a = a.as_real().op_norm();
    Ok(vec![
        det,
        spectrum_parity_with(&dec, norm_a, tol),
        check_positivity_transitivity(a, tol),
        elfving_with(&dec, tol),
        runnenberg_with(&dec, a.dim(), tol).0,
    ])
}
