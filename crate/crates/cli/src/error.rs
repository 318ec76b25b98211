//! Front-end error type and its process exit-code mapping.

use spinphase_core::SpinError;
use thiserror::Error;

/// Everything the command-line layer can fail with.
///
/// Setup problems (unreadable config, bad keys, oversized grids, a
/// non-monotonic time grid where unwrapping was requested) exit with
/// code 1. Failures while producing numbers (a rejected grid point,
/// a write error mid-run) exit with code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("grid too large: {rows} rows exceed the cap of {cap} (raise max_rows to override)")]
    GridTooLarge { rows: u128, cap: usize },
    #[error("non-monotonic time grid: t[{index}] = {t} does not increase over its predecessor")]
    NonMonotonicTimeGrid { index: usize, t: f64 },
    #[error("compute failed at {point}: {source}")]
    Compute { point: String, source: SpinError },
    #[error("output write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code for this error: 1 for configuration problems,
    /// 2 for failures after the run has started.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_)
            | CliError::GridTooLarge { .. }
            | CliError::NonMonotonicTimeGrid { .. } => 1,
            CliError::Compute { .. } | CliError::Io(_) => 2,
        }
    }
}
