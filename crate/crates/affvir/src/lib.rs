//! `affvir` command-line front end: configuration, dispatch and JSON reports.

pub mod commands;
pub mod config;
pub mod report;
pub mod sample;

use std::ffi::OsString;

use clap::Parser;

use config::{Cli, JobConfig};
use report::Report;

/// Exit code for a configuration error.
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<affvir_core::analysis::AnalysisError> for JobError {
    fn from(e: affvir_core::analysis::AnalysisError) -> Self {
        use affvir_core::analysis::AnalysisError::*;
        match e {
            Truncation(_) | NotStabilized { .. } | Inconsistent { .. } => JobError::Config(format!("window too small: {e}")),
            other => JobError::Config(other.to_string()),
        }
    }
}

impl From<affvir_core::hwmod::HwError> for JobError {
    fn from(e: affvir_core::hwmod::HwError) -> Self {
        JobError::Config(format!("window too small: {e}"))
    }
}

fn load(cli: &Cli) -> Result<JobConfig, JobError> {
    let base = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| JobError::Config(format!("{}: {e}", path.display())))?;
            JobConfig::from_json(&text).map_err(JobError::Config)?
        }
        None => JobConfig::default(),
    };
    Ok(base.overlay(cli))
}

/// Runs a job and writes its report; returns the report.
pub fn execute(cfg: JobConfig) -> Result<Report, JobError> {
    let report = commands::dispatch(cfg)?;
    let text = report.to_json();
    match &report.config.output {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(report)
}

/// Parses `argv`, runs the job and maps the outcome to an exit code: 0 when
/// every check passed, 1 when one failed, 2 on a configuration error.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    match load(&cli).and_then(execute) {
        Ok(report) if report.all_pass() => 0,
        Ok(_) => 1,
        Err(e) => {
            eprintln!("affvir: {e}");
            EXIT_CONFIG
        }
    }
}
