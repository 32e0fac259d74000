//! Parameter sweeps over the vibron model: grid specification, parallel
//! evaluation, and CSV/JSON output.

pub mod config;
pub mod output;
pub mod scan;
pub mod spec;

pub use config::{parse_config, Overrides};
pub use output::{format_g15, render, write_atomic, Format};
pub use scan::{compute_rows, evaluate_point, run_scan, ScanOutcome, ScanRow};
pub use spec::{Ansatz, Observable, Preset, ScanSpec, XiGrid};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<vibron::VibronError> for CliError {
    fn from(e: vibron::VibronError) -> Self {
        match e {
            vibron::VibronError::Domain(msg) => CliError::Usage(msg),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
