//! Command-line front end. Exit codes partition outcomes:
//!   0  embeddable / operation succeeded
//!   1  not embeddable (or, for `generators`, exhaustive search found none)
//!   2  parse or validation failure (bad input data)
//!   3  inconclusive or numerically undefined for this input
//!
//! Identical input and flags produce byte-identical machine output.

mod io;
mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use markov_embed::linalg::{expm, logm_principal, RealMatrix};
use markov_embed::regularize::{exp_error_bound_loose, regularize};
use markov_embed::search::{
    decide_embeddable_with, enumerate_branches_with, EmbeddabilityStatus, SearchLimits,
};
use markov_embed::{
    validate_row_zero, validate_stochastic, Error, Tolerances,
};
use rand::Rng as _;
use rand::SeedableRng as _;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::io::{detect_format, format_matrix, read_matrix, MatrixFormat};
use crate::report::{build_report, render_json, render_text, sig, AnalysisReport};

/// Embeddability analysis for row-stochastic matrices: decide whether a
/// transition matrix is a time-1 snapshot of a continuous-time Markov
/// chain, list every candidate generator, or compute the nearest one.
#[derive(Debug, Parser)]
#[command(name = "markov-embed", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full pipeline: validate, spectral checks, verdict, generator list,
    /// and regularization when the matrix is not embeddable.
    Analyze(AnalyzeArgs),
    /// Principal matrix logarithm of a stochastic matrix.
    Logm(MatrixArgs),
    /// Matrix exponential of a row-zero (generator-shaped) matrix.
    Expm(MatrixArgs),
    /// Nearest-generator regularization of the principal logarithm.
    Regularize(MatrixArgs),
    /// Enumerate candidate generators across logarithm branches.
    Generators(MatrixArgs),
    /// Seeded randomized self-check of the full pipeline.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<MatrixFormat>,

    /// Report rendering.
    #[arg(long, value_enum, default_value_t = ReportKind::Text)]
    report: ReportKind,

    /// Row-sum tolerance for accepting a matrix as stochastic (or row-zero).
    #[arg(long, default_value_t = Tolerances::default().row_sum)]
    tol_row_sum: f64,

    /// Entry-sign tolerance: how negative an entry may be before rejection.
    #[arg(long, default_value_t = Tolerances::default().entry)]
    tol_entry: f64,

    /// Slack added to the spectral sector bound during branch enumeration.
    #[arg(long, default_value_t = Tolerances::default().sector)]
    tol_sector: f64,

    /// Cap on the absolute branch offset per eigenvalue pair.
    #[arg(long, default_value_t = 64)]
    max_offset: i64,

    /// Suppress stdout; the exit code still reports the outcome.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Matrix file, or a directory of .csv/.json files for batch mode.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    /// Matrix file (CSV rows or a JSON object with a "matrix" field).
    #[arg(long, value_name = "PATH")]
    input: PathBuf,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    /// RNG seed for the randomized sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of random generators to exercise.
    #[arg(long, default_value_t = 100)]
    count: usize,

    /// Suppress stdout; the exit code still reports the outcome.
    #[arg(long)]
    quiet: bool,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    match Cli::parse().command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Logm(args) => cmd_logm(&args),
        Command::Expm(args) => cmd_expm(&args),
        Command::Regularize(args) => cmd_regularize(&args),
        Command::Generators(args) => cmd_generators(&args),
        Command::Selftest(args) => cmd_selftest(&args),
    }
}

fn tolerances(common: &CommonArgs) -> Tolerances {
    Tolerances {
        row_sum: common.tol_row_sum,
        entry: common.tol_entry,
        sector: common.tol_sector,
        ..Tolerances::default()
    }
}

fn limits(common: &CommonArgs) -> SearchLimits {
    SearchLimits {
        max_offset: common.max_offset,
        ..SearchLimits::default()
    }
}

/// Validation errors mean bad input (2); everything else that can escape
/// the library is a numerical "cannot decide for this input" (3).
fn error_code(e: &Error) -> i32 {
    match e {
        Error::NotSquare { .. }
        | Error::NonFiniteEntry { .. }
        | Error::NotStochastic { .. }
        | Error::NotRowZero { .. }
        | Error::NotGenerator { .. } => 2,
        _ => 3,
    }
}

fn fail(code: i32, message: &str) -> i32 {
    eprintln!("markov-embed: {message}");
    code
}

fn emit(quiet: bool, text: &str) {
    if !quiet {
        print!("{text}");
    }
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Serialize)]
#[serde(untagged)]
enum BatchEntry {
    Report(Box<AnalysisReport>),
    Failure { source: String, error: String },
}

fn cmd_analyze(args: &AnalyzeArgs) -> i32 {
    if args.input.is_dir() {
        return analyze_directory(args);
    }
    let tol = tolerances(&args.common);
    let lim = limits(&args.common);
    match analyze_file(&args.input, &args.common, &tol, &lim) {
        Ok((report, code)) => {
            let rendered = match args.common.report {
                ReportKind::Text => render_text(&report),
                ReportKind::Json => render_json(&report),
            };
            emit(args.common.quiet, &rendered);
            code
        }
        Err((code, message)) => fail(code, &message),
    }
}

fn analyze_file(
    path: &Path,
    common: &CommonArgs,
    tol: &Tolerances,
    lim: &SearchLimits,
) -> Result<(AnalysisReport, i32), (i32, String)> {
    let raw = read_matrix(path, common.format).map_err(|e| (2, e))?;
    let a = validate_stochastic(&raw, tol)
        .map_err(|e| (error_code(&e), format!("{}: {e}", path.display())))?;
    let report = build_report(&path.display().to_string(), &a, tol, lim);
    let code = report::exit_code(&report);
    Ok((report, code))
}

/// Batch verdicts aggregate by severity: parse failures dominate, then
/// inconclusive, then not-embeddable, then embeddable.
fn worse_code(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        2 => 3,
        3 => 2,
        1 => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn analyze_directory(args: &AnalyzeArgs) -> i32 {
    let tol = tolerances(&args.common);
    let lim = limits(&args.common);
    let mut paths: Vec<PathBuf> = match std::fs::read_dir(&args.input) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                matches!(
                    p.extension().and_then(|s| s.to_str()),
                    Some("csv") | Some("json")
                )
            })
            .collect(),
        Err(e) => return fail(2, &format!("cannot read {}: {e}", args.input.display())),
    };
    paths.sort();
    if paths.is_empty() {
        return fail(2, &format!("no .csv or .json files in {}", args.input.display()));
    }

    let mut code = 0;
    let mut entries = Vec::new();
    let mut text = String::new();
    for path in &paths {
        match analyze_file(path, &args.common, &tol, &lim) {
            Ok((report, file_code)) => {
                code = worse_code(code, file_code);
                if args.common.report == ReportKind::Text {
                    text.push_str(&render_text(&report));
                    text.push('\n');
                } else {
                    entries.push(BatchEntry::Report(Box::new(report)));
                }
            }
            Err((file_code, message)) => {
                code = worse_code(code, file_code);
                if args.common.report == ReportKind::Text {
                    text.push_str(&format!("{}: error: {message}\n\n", path.display()));
                } else {
                    entries.push(BatchEntry::Failure {
                        source: path.display().to_string(),
                        error: message,
                    });
                }
            }
        }
    }

    match args.common.report {
        ReportKind::Text => emit(args.common.quiet, &text),
        ReportKind::Json => {
            let mut out = serde_json::to_string_pretty(&entries)
                .expect("batch serialization cannot fail");
            out.push('\n');
            emit(args.common.quiet, &out);
        }
    }
    code
}

// ---------------------------------------------------------------------------
// logm / expm: matrix in, matrix out, same format as the input

fn cmd_logm(args: &MatrixArgs) -> i32 {
    let tol = tolerances(&args.common);
    let format = match detect_format(&args.input, args.common.format) {
        Ok(f) => f,
        Err(e) => return fail(2, &e),
    };
    let raw = match read_matrix(&args.input, args.common.format) {
        Ok(m) => m,
        Err(e) => return fail(2, &e),
    };
    let a = match validate_stochastic(&raw, &tol) {
        Ok(a) => a,
        Err(e) => return fail(error_code(&e), &e.to_string()),
    };
    match logm_principal(a.as_real(), &tol) {
        Ok(log) => {
            emit(args.common.quiet, &format_matrix(&log, format));
            0
        }
        Err(e) => fail(error_code(&e), &e.to_string()),
    }
}

fn cmd_expm(args: &MatrixArgs) -> i32 {
    let tol = tolerances(&args.common);
    let format = match detect_format(&args.input, args.common.format) {
        Ok(f) => f,
        Err(e) => return fail(2, &e),
    };
    let raw = match read_matrix(&args.input, args.common.format) {
        Ok(m) => m,
        Err(e) => return fail(2, &e),
    };
    let l = match validate_row_zero(&raw, &tol) {
        Ok(l) => l,
        Err(e) => return fail(error_code(&e), &e.to_string()),
    };
    match expm(l.as_real()) {
        Ok(result) => {
            emit(args.common.quiet, &format_matrix(&result, format));
            0
        }
        Err(e) => fail(error_code(&e), &e.to_string()),
    }
}

// ---------------------------------------------------------------------------
// regularize

#[derive(Serialize)]
struct RegularizeOutput {
    schema_version: u32,
    source: String,
    log: Vec<Vec<f64>>,
    generator: Vec<Vec<f64>>,
    epsilon: f64,
    adjusted: Vec<Vec<f64>>,
    exp_error_actual: f64,
    exp_error_bound: f64,
    exp_error_bound_loose: f64,
}

fn cmd_regularize(args: &MatrixArgs) -> i32 {
    let tol = tolerances(&args.common);
    let raw = match read_matrix(&args.input, args.common.format) {
        Ok(m) => m,
        Err(e) => return fail(2, &e),
    };
    let a = match validate_stochastic(&raw, &tol) {
        Ok(a) => a,
        Err(e) => return fail(error_code(&e), &e.to_string()),
    };
    let result = match regularize(&a, &tol) {
        Ok(r) => r,
        Err(e) => return fail(error_code(&e), &e.to_string()),
    };
    let adjusted = expm(result.generator.as_real())
        .expect("generator norm already passed the exponential guard");
    let output = RegularizeOutput {
        schema_version: 1,
        source: args.input.display().to_string(),
        log: result.log.as_real().rows(),
        generator: result.generator.as_real().rows(),
        epsilon: result.epsilon,
        adjusted: adjusted.rows(),
        exp_error_actual: result.exp_error_actual,
        exp_error_bound: result.exp_error_bound,
        exp_error_bound_loose: exp_error_bound_loose(result.epsilon),
    };
    let rendered = match args.common.report {
        ReportKind::Json => {
            let mut s = serde_json::to_string_pretty(&output)
                .expect("regularization serialization cannot fail");
            s.push('\n');
            s
        }
        ReportKind::Text => {
            let mut s = String::new();
            s.push_str("principal log:\n");
            push_rows(&mut s, &output.log);
            s.push_str("nearest generator:\n");
            push_rows(&mut s, &output.generator);
            s.push_str(&format!("epsilon: {}\n", sig(output.epsilon)));
            s.push_str("adjusted matrix exp(B):\n");
            push_rows(&mut s, &output.adjusted);
            s.push_str(&format!(
                "exp error: actual {}   bound {}   loose bound {}\n",
                sig(output.exp_error_actual),
                sig(output.exp_error_bound),
                sig(output.exp_error_bound_loose)
            ));
            s
        }
    };
    emit(args.common.quiet, &rendered);
    0
}

fn push_rows(out: &mut String, rows: &[Vec<f64>]) {
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| sig(*v)).collect();
        out.push_str(&format!("  [{}]\n", line.join(", ")));
    }
}

// ---------------------------------------------------------------------------
// generators

#[derive(Serialize)]
struct BranchOutput {
    offsets: Vec<i64>,
    is_generator: bool,
    matrix: Vec<Vec<f64>>,
    sector_margins: Vec<f64>,
}

#[derive(Serialize)]
struct GeneratorsOutput {
    schema_version: u32,
    source: String,
    exhaustive: bool,
    branch_count: usize,
    generator_count: usize,
    branches: Vec<BranchOutput>,
}

fn cmd_generators(args: &MatrixArgs) -> i32 {
    let tol = tolerances(&args.common);
    let lim = limits(&args.common);
    let raw = match read_matrix(&args.input, args.common.format) {
        Ok(m) => m,
        Err(e) => return fail(2, &e),
    };
    let a = match validate_stochastic(&raw, &tol) {
        Ok(a) => a,
        Err(e) => return fail(error_code(&e), &e.to_string()),
    };
    let enumeration = match enumerate_branches_with(&a, &tol, &lim) {
        Ok(en) => en,
        Err(e) => return fail(error_code(&e), &e.to_string()),
    };
    let branches: Vec<BranchOutput> = enumeration
        .branches
        .iter()
        .map(|b| BranchOutput {
            offsets: b.offsets.clone(),
            is_generator: b.is_generator,
            matrix: b.matrix.rows(),
            sector_margins: b.sector_margins.clone(),
        })
        .collect();
    let generator_count = branches.iter().filter(|b| b.is_generator).count();
    let output = GeneratorsOutput {
        schema_version: 1,
        source: args.input.display().to_string(),
        exhaustive: enumeration.exhaustive,
        branch_count: branches.len(),
        generator_count,
        branches,
    };

    let rendered = match args.common.report {
        ReportKind::Json => {
            let mut s = serde_json::to_string_pretty(&output)
                .expect("generator list serialization cannot fail");
            s.push('\n');
            s
        }
        ReportKind::Text => {
            let mut s = format!(
                "branches: {} ({}), generators: {}\n",
                output.branch_count,
                if output.exhaustive { "exhaustive" } else { "truncated" },
                output.generator_count
            );
            for (i, b) in output.branches.iter().enumerate() {
                let offsets: Vec<String> = b.offsets.iter().map(|k| k.to_string()).collect();
                s.push_str(&format!(
                    "branch {} offsets [{}] {}:\n",
                    i + 1,
                    offsets.join(", "),
                    if b.is_generator { "generator" } else { "not a generator" }
                ));
                push_rows(&mut s, &b.matrix);
                let margins: Vec<String> = b.sector_margins.iter().map(|v| sig(*v)).collect();
                s.push_str(&format!("  sector margins: [{}]\n", margins.join(", ")));
            }
            s
        }
    };
    emit(args.common.quiet, &rendered);

    if generator_count > 0 {
        0
    } else if enumeration.exhaustive {
        1
    } else {
        3
    }
}

// ---------------------------------------------------------------------------
// selftest

/// Random generator with conservative rates. Total rate per row stays well
/// under 1, so the exponential is strictly diagonally dominant and the
/// spectrum is comfortably inside the principal strip.
fn random_generator_rows(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let rate = rng.gen_range(0.25..0.6);
        let weights: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let mut row = vec![0.0; n];
        let mut weight = weights.iter();
        for (j, slot) in row.iter_mut().enumerate() {
            if j != i {
                *slot = rate * weight.next().expect("n - 1 weights") / total;
            }
        }
        row[i] = -(row.iter().sum::<f64>() - row[i]);
        rows.push(row);
    }
    rows
}

fn cmd_selftest(args: &SelftestArgs) -> i32 {
    let tol = Tolerances::default();
    let lim = SearchLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = 0usize;
    let mut degenerate = 0usize;
    let mut max_round_trip = 0.0f64;
    let mut log = String::new();

    for case in 0..args.count {
        let n = 3 + case % 6;
        let rows = random_generator_rows(n, &mut rng);
        let raw = match RealMatrix::from_rows(&rows) {
            Ok(m) => m,
            Err(e) => {
                failures += 1;
                log.push_str(&format!("case {case}: sampler produced bad matrix: {e}\n"));
                continue;
            }
        };
        let generator = match markov_embed::validate_generator(&raw, &tol) {
            Ok(g) => g,
            Err(e) => {
                failures += 1;
                log.push_str(&format!("case {case}: sampled generator rejected: {e}\n"));
                continue;
            }
        };
        let snapshot = expm(generator.as_real()).expect("bounded rates cannot overflow");
        let a = match validate_stochastic(&snapshot, &tol) {
            Ok(a) => a,
            Err(e) => {
                failures += 1;
                log.push_str(&format!("case {case}: exp not stochastic: {e}\n"));
                continue;
            }
        };

        let verdict = decide_embeddable_with(&a, &tol, &lim);
        match verdict.status {
            EmbeddabilityStatus::Embeddable => {}
            EmbeddabilityStatus::Inconclusive => {
                // Repeated eigenvalues are a legitimate blind spot, not a bug.
                degenerate += 1;
                continue;
            }
            EmbeddabilityStatus::NotEmbeddable => {
                failures += 1;
                log.push_str(&format!(
                    "case {case}: snapshot of a known generator judged not embeddable\n"
                ));
                continue;
            }
        }

        if let Ok(recovered) = logm_principal(a.as_real(), &tol) {
            let err = recovered.sub(generator.as_real()).op_norm()
                / (1.0 + generator.as_real().op_norm());
            max_round_trip = max_round_trip.max(err);
            if err >= 1e-6 {
                failures += 1;
                log.push_str(&format!("case {case}: round-trip error {err:.3e}\n"));
            }
        }
    }

    log.push_str(&format!(
        "selftest: {} cases, {} failures, {} skipped (repeated eigenvalues), max round-trip {}\n",
        args.count,
        failures,
        degenerate,
        sig(max_round_trip)
    ));
    emit(args.quiet, &log);
    if failures == 0 {
        0
    } else {
        1
    }
}
