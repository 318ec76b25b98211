//! Command-line companion to `spinphase-core`: config parsing, shipped
//! scenarios, parallel parameter sweeps with CSV output, phase
//! unwrapping, and the invariant check suite.
//!
//! The binary (`spinphase`) is a thin wrapper over this library; every
//! behavior is reachable programmatically, which is how the integration
//! tests drive it.

pub mod check;
pub mod config;
pub mod error;
pub mod sweep;
pub mod unwrap;

pub use check::{run_all, CriterionOutcome};
pub use config::{
    apply_overrides, config_from_path, config_from_scenario, config_from_text, linspace,
    parse_grid, scenario_names, scenario_text, CliOverrides, DynamicalReference, OutputSet,
    SweepConfig, DEFAULT_MAX_ROWS, DEFAULT_STEPS,
};
pub use error::CliError;
pub use sweep::{collect_rows, run_sweep, SweepRow, CSV_HEADER, POPULATION_COLUMNS};
pub use unwrap::unwrap_phase;
