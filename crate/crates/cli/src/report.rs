//! Analysis report assembly and rendering. The JSON form is the machine
//! interface: schema-versioned, field order fixed, floats emitted with
//! shortest round-trip encoding so serialization is lossless. The text
//! form prints every numeric field with 12 significant digits.

use markov_embed::checks::{check_runnenberg, run_battery, Certificate, CheckResult};
use markov_embed::linalg::RealMatrix;
use markov_embed::regularize::{exp_error_bound_loose, regularize};
use markov_embed::search::{
    cuthbert_diagnostics, decide_embeddable_with, enumerate_branches_with, EmbeddabilityStatus,
    SearchLimits, UniquenessCertificate, VerdictCertificate,
};
use markov_embed::{validate_generator, StochasticMatrix, Tolerances};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub input: InputEcho,
    pub tolerances: ToleranceEcho,
    pub spectrum: Vec<SpectrumLine>,
    pub battery: Vec<CheckLine>,
    pub verdict: VerdictBlock,
    pub generators: Vec<GeneratorBlock>,
    pub regularization: Option<RegularizationBlock>,
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub dimension: usize,
    pub matrix: Vec<Vec<f64>>,
    /// Largest entry move the validator made in each row.
    pub row_repairs: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct ToleranceEcho {
    pub row_sum: f64,
    pub entry: f64,
    pub separation: f64,
    pub axis: f64,
    pub reality: f64,
    pub sector: f64,
    pub witness: f64,
}

/// One eigenvalue with its sector datum: modulus, absolute argument, and
/// the angle-dependent modulus bound it must stay under.
#[derive(Debug, Serialize)]
pub struct SpectrumLine {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub arg_abs: f64,
    pub sector_bound: f64,
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub margin: f64,
    pub certificate: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VerdictBlock {
    pub status: String,
    pub certificate: Option<String>,
    pub reason: Option<String>,
    pub uniqueness: String,
    pub generator_count_lower_bound: usize,
    pub witness: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Serialize)]
pub struct CuthbertBlock {
    pub det_a: f64,
    pub trace_b: f64,
    pub beta: f64,
    pub norm_b_plus_beta: f64,
    pub spectral_strip_ok: bool,
    pub conditions: [bool; 4],
}

#[derive(Debug, Serialize)]
pub struct GeneratorBlock {
    pub offsets: Vec<i64>,
    pub matrix: Vec<Vec<f64>>,
    pub sector_margins: Vec<f64>,
    pub cuthbert: Option<CuthbertBlock>,
}

#[derive(Debug, Serialize)]
pub struct RegularizationBlock {
    pub log: Vec<Vec<f64>>,
    pub generator: Vec<Vec<f64>>,
    pub epsilon: f64,
    pub adjusted: Vec<Vec<f64>>,
    pub exp_error_actual: f64,
    pub exp_error_bound: f64,
    pub exp_error_bound_loose: f64,
}

fn status_str(s: EmbeddabilityStatus) -> &'static str {
    match s {
        EmbeddabilityStatus::Embeddable => "embeddable",
        EmbeddabilityStatus::NotEmbeddable => "not_embeddable",
        EmbeddabilityStatus::Inconclusive => "inconclusive",
    }
}

fn uniqueness_str(u: UniquenessCertificate) -> &'static str {
    match u {
        UniquenessCertificate::UniquePrincipal => "unique_principal",
        UniquenessCertificate::AtMostFinite => "at_most_finite",
        UniquenessCertificate::Unknown => "unknown",
    }
}

fn certificate_str(c: &Certificate) -> String {
    match c {
        Certificate::Determinant { value } => format!("determinant {}", sig(*value)),
        Certificate::Eigenvalue { lambda } => {
            format!("eigenvalue {} + {} i", sig(lambda.re), sig(lambda.im))
        }
        Certificate::SpectralCluster { lambda, count } => format!(
            "negative cluster at {} + {} i with odd count {count}",
            sig(lambda.re),
            sig(lambda.im)
        ),
        Certificate::IndexTriple { i, j, k } => format!("index triple ({i}, {j}, {k})"),
        Certificate::SectorViolation {
            lambda,
            modulus,
            bound,
        } => format!(
            "eigenvalue {} + {} i has modulus {} above sector bound {}",
            sig(lambda.re),
            sig(lambda.im),
            sig(*modulus),
            sig(*bound)
        ),
        Certificate::Inapplicable { reason } => format!("inapplicable: {reason}"),
    }
}

fn verdict_certificate_str(c: &VerdictCertificate) -> String {
    match c {
        VerdictCertificate::FailedCheck(check) => {
            format!("failed_check:{}", check.name.as_str())
        }
        VerdictCertificate::ExhaustedEnumeration => "exhausted_enumeration".to_string(),
        VerdictCertificate::Uniqueness(u) => format!("uniqueness:{}", uniqueness_str(*u)),
    }
}

fn matrix_rows(m: &RealMatrix) -> Vec<Vec<f64>> {
    m.rows()
}

fn check_line(r: &CheckResult) -> CheckLine {
    CheckLine {
        name: r.name.as_str().to_string(),
        passed: r.passed,
        margin: r.margin,
        certificate: r.certificate.as_ref().map(certificate_str),
    }
}

pub fn build_report(
    source: &str,
    a: &StochasticMatrix,
    tol: &Tolerances,
    limits: &SearchLimits,
) -> AnalysisReport {
    let spectrum = match check_runnenberg(a, tol) {
        Ok((_, data)) => data
            .iter()
            .map(|d| SpectrumLine {
                re: d.lambda.re,
                im: d.lambda.im,
                modulus: d.r,
                arg_abs: d.theta,
                sector_bound: d.bound,
            })
            .collect(),
        Err(_) => Vec::new(),
    };
    let battery = match run_battery(a, tol) {
        Ok(results) => results.iter().map(check_line).collect(),
        Err(_) => Vec::new(),
    };

    let verdict = decide_embeddable_with(a, tol, limits);
    let uniqueness = markov_embed::search::uniqueness_certificate(a, tol);

    let mut generators = Vec::new();
    if let Ok(en) = enumerate_branches_with(a, tol, limits) {
        for br in &en.branches {
            if !br.is_generator {
                continue;
            }
            let cuthbert = validate_generator(&br.matrix, tol)
                .ok()
                .and_then(|g| cuthbert_diagnostics(a, &g, tol).ok())
                .map(|d| CuthbertBlock {
                    det_a: d.det_a,
                    trace_b: d.trace_b,
                    beta: d.beta,
                    norm_b_plus_beta: d.norm_b_plus_beta,
                    spectral_strip_ok: d.spectral_strip_ok,
                    conditions: d.conditions,
                });
            generators.push(GeneratorBlock {
                offsets: br.offsets.clone(),
                matrix: matrix_rows(&br.matrix),
                sector_margins: br.sector_margins.clone(),
                cuthbert,
            });
        }
    }

    let regularization = if verdict.status == EmbeddabilityStatus::NotEmbeddable {
        regularize(a, tol).ok().map(|r| {
            let adjusted = markov_embed::linalg::expm(r.generator.as_real())
                .expect("generator norm already passed the exponential guard");
            RegularizationBlock {
                log: matrix_rows(r.log.as_real()),
                generator: matrix_rows(r.generator.as_real()),
                epsilon: r.epsilon,
                adjusted: matrix_rows(&adjusted),
                exp_error_actual: r.exp_error_actual,
                exp_error_bound: r.exp_error_bound,
                exp_error_bound_loose: exp_error_bound_loose(r.epsilon),
            }
        })
    } else {
        None
    };

    AnalysisReport {
        schema_version: 1,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input: InputEcho {
            source: source.to_string(),
            dimension: a.dim(),
            matrix: matrix_rows(a.as_real()),
            row_repairs: a.row_repairs().to_vec(),
        },
        tolerances: ToleranceEcho {
            row_sum: tol.row_sum,
            entry: tol.entry,
            separation: tol.separation,
            axis: tol.axis,
            reality: tol.reality,
            sector: tol.sector,
            witness: tol.witness,
        },
        spectrum,
        battery,
        verdict: VerdictBlock {
            status: status_str(verdict.status).to_string(),
            certificate: verdict.certificate.as_ref().map(verdict_certificate_str),
            reason: verdict.reason.clone(),
            uniqueness: uniqueness_str(uniqueness).to_string(),
            generator_count_lower_bound: verdict.generator_count_lower_bound,
            witness: verdict.witness.as_ref().map(|g| matrix_rows(g.as_real())),
        },
        generators,
        regularization,
    }
}

pub fn exit_code(report: &AnalysisReport) -> i32 {
    match report.verdict.status.as_str() {
        "embeddable" => 0,
        "not_embeddable" => 1,
        _ => 3,
    }
}

/// 12 significant digits.
pub fn sig(x: f64) -> String {
    format!("{:.11e}", x)
}

fn push_matrix(out: &mut String, indent: &str, rows: &[Vec<f64>]) {
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| sig(*v)).collect();
        out.push_str(indent);
        out.push_str(&format!("[{}]\n", line.join(", ")));
    }
}

pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "markov-embed analysis (tool {} / schema {})\n",
        report.tool_version, report.schema_version
    ));
    out.push_str(&format!(
        "input: {} ({}x{})\n",
        report.input.source, report.input.dimension, report.input.dimension
    ));
    push_matrix(&mut out, "  ", &report.input.matrix);
    let repairs: Vec<String> = report.input.row_repairs.iter().map(|v| sig(*v)).collect();
    out.push_str(&format!("row repairs: [{}]\n", repairs.join(", ")));
    out.push_str(&format!(
        "tolerances: row_sum={} entry={} separation={} axis={} reality={} sector={} witness={}\n",
        sig(report.tolerances.row_sum),
        sig(report.tolerances.entry),
        sig(report.tolerances.separation),
        sig(report.tolerances.axis),
        sig(report.tolerances.reality),
        sig(report.tolerances.sector),
        sig(report.tolerances.witness),
    ));

    out.push_str("spectrum (eigenvalue, modulus, |arg|, sector bound):\n");
    for line in &report.spectrum {
        out.push_str(&format!(
            "  {} + {} i   modulus {}   |arg| {}   bound {}\n",
            sig(line.re),
            sig(line.im),
            sig(line.modulus),
            sig(line.arg_abs),
            sig(line.sector_bound)
        ));
    }

    out.push_str("checks:\n");
    for check in &report.battery {
        out.push_str(&format!(
            "  {}: {} (margin {})",
            check.name,
            if check.passed { "pass" } else { "FAIL" },
            sig(check.margin)
        ));
        if let Some(cert) = &check.certificate {
            out.push_str(&format!("  [{cert}]"));
        }
        out.push('\n');
    }

    out.push_str(&format!("verdict: {}", report.verdict.status));
    if let Some(cert) = &report.verdict.certificate {
        out.push_str(&format!(" ({cert})"));
    }
    out.push('\n');
    if let Some(reason) = &report.verdict.reason {
        out.push_str(&format!("reason: {reason}\n"));
    }
    out.push_str(&format!("uniqueness: {}\n", report.verdict.uniqueness));
    out.push_str(&format!(
        "generator count lower bound: {}\n",
        report.verdict.generator_count_lower_bound
    ));
    match &report.verdict.witness {
        Some(rows) => {
            out.push_str("witness generator:\n");
            push_matrix(&mut out, "  ", rows);
        }
        None => out.push_str("witness generator: none\n"),
    }

    if report.generators.is_empty() {
        out.push_str("generators found: none\n");
    } else {
        out.push_str(&format!("generators found: {}\n", report.generators.len()));
        for (i, g) in report.generators.iter().enumerate() {
            let offsets: Vec<String> = g.offsets.iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("  generator {} offsets [{}]:\n", i + 1, offsets.join(", ")));
            push_matrix(&mut out, "    ", &g.matrix);
            let margins: Vec<String> = g.sector_margins.iter().map(|v| sig(*v)).collect();
            out.push_str(&format!("    sector margins: [{}]\n", margins.join(", ")));
            if let Some(c) = &g.cuthbert {
                out.push_str(&format!(
                    "    uniqueness chain: det(A)={} trace(B)={} beta={} |B+beta I|={} strip_ok={} conditions={:?}\n",
                    sig(c.det_a),
                    sig(c.trace_b),
                    sig(c.beta),
                    sig(c.norm_b_plus_beta),
                    c.spectral_strip_ok,
                    c.conditions
                ));
            }
        }
    }

    match &report.regularization {
        Some(r) => {
            out.push_str("regularization:\n");
            out.push_str("  principal log:\n");
            push_matrix(&mut out, "    ", &r.log);
            out.push_str("  nearest generator:\n");
            push_matrix(&mut out, "    ", &r.generator);
            out.push_str(&format!("  epsilon: {}\n", sig(r.epsilon)));
            out.push_str("  adjusted matrix exp(B):\n");
            push_matrix(&mut out, "    ", &r.adjusted);
            out.push_str(&format!(
                "  exp error: actual {}   bound {}   loose bound {}\n",
                sig(r.exp_error_actual),
                sig(r.exp_error_bound),
                sig(r.exp_error_bound_loose)
            ));
        }
        None => out.push_str("regularization: not applicable\n"),
    }

    out
}

pub fn render_json(report: &AnalysisReport) -> String {
    let mut out =
        serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    out.push('\n');
    out
}
