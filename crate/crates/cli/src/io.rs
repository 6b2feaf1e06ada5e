//! Matrix file formats: CSV (one row per line, comma-separated decimals)
//! and JSON (an object with a "matrix" field holding row arrays). The
//! format is inferred from the file extension unless overridden.

use clap::ValueEnum;
use markov_embed::linalg::RealMatrix;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    matrix: Vec<Vec<f64>>,
}

pub fn detect_format(path: &Path, forced: Option<MatrixFormat>) -> Result<MatrixFormat, String> {
    if let Some(f) = forced {
        return Ok(f);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(MatrixFormat::Csv),
        Some("json") => Ok(MatrixFormat::Json),
        other => Err(format!(
            "cannot infer matrix format from extension {:?}; pass --format",
            other.unwrap_or("")
        )),
    }
}

pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<RealMatrix, String> {
    let rows = match format {
        MatrixFormat::Csv => {
            let mut rows = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let mut row = Vec::new();
                for (col, field) in line.split(',').enumerate() {
                    let value: f64 = field.trim().parse().map_err(|_| {
                        format!("line {}: field {} is not a number: {:?}", lineno + 1, col + 1, field.trim())
                    })?;
                    row.push(value);
                }
                rows.push(row);
            }
            if rows.is_empty() {
                return Err("no rows found".to_string());
            }
            rows
        }
        MatrixFormat::Json => {
            let file: MatrixFile =
                serde_json::from_str(text).map_err(|e| format!("invalid matrix JSON: {e}"))?;
            file.matrix
        }
    };
    RealMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn read_matrix(path: &Path, forced: Option<MatrixFormat>) -> Result<RealMatrix, String> {
    let format = detect_format(path, forced)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_matrix(&text, format).map_err(|e| format!("{}: {e}", path.display()))
}

/// Serializes a matrix in the given format. Entries use the shortest
/// representation that round-trips, so piping output back in is lossless.
pub fn format_matrix(m: &RealMatrix, format: MatrixFormat) -> String {
    let rows = m.rows();
    match format {
        MatrixFormat::Csv => {
            let mut out = String::new();
            for row in rows {
                let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        MatrixFormat::Json => {
            let mut out = serde_json::to_string_pretty(&MatrixFile { matrix: rows })
                .expect("matrix serialization cannot fail");
            out.push('\n');
            out
        }
    }
}
