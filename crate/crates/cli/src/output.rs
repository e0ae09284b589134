//! JSON, CSV and plain-text renderings of a report.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::run::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn to_json(report: &Report) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv(report: &Report) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &report.rows {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub fn to_text(report: &Report) -> String {
    let mut out = format!("{} on {}", report.command, report.space);
    if !report.bundle.is_empty() {
        out.push_str(&format!(" with bundle {:?}", report.bundle));
    }
    out.push('\n');
    for row in &report.rows {
        out.push_str(&format!("{} [{}] = {}    ({})\n", row.quantity, row.degree, row.value, row.check));
    }
    out.push_str(if report.passed { "all checks pass\n" } else { "some checks fail\n" });
    out
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Text => Ok(to_text(report)),
    }
}

/// Writes `<command>.json` and `<command>.csv` into `dir`.
pub fn write_artifacts(report: &Report, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    let json = dir.join(format!("{}.json", report.command));
    let csv = dir.join(format!("{}.csv", report.command));
    fs::write(&json, to_json(report)?)?;
    fs::write(&csv, to_csv(report)?)?;
    Ok(vec![json, csv])
}
