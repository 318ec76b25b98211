//! Sweep configuration: a flat key-value file format, embedded
//! scenarios, and grid expansion.
//!
//! A config file holds one `key = value` pair per line; `#` starts a
//! comment (whole-line or trailing). Grid-valued keys (`J`, `C`, `D`,
//! `epsilon`, `beta`, `t`) accept either a comma list (`0, 0.5, 1`) or
//! a `start:stop:count` range expanded to `count` evenly spaced points
//! with both endpoints exact. Every key is optional; absent grids
//! default to a single point. Unknown and duplicate keys are errors
//! rather than warnings, so a typo cannot silently run the wrong sweep.
//!
//! A file may name a shipped scenario with `scenario = fig3`; the
//! scenario's settings are applied first and the file's own keys win,
//! with command-line flags on top of both.

use std::collections::HashSet;
use std::path::Path;

use spinphase_core::tol;

use crate::error::CliError;

/// Default cap on the number of emitted rows; `max_rows` raises it.
pub const DEFAULT_MAX_ROWS: usize = 10_000_000;

/// Default step count for the discretized-connection oracle.
pub const DEFAULT_STEPS: usize = 10_000;

/// Which Hamiltonian supplies the per-eigenstate dynamical counter-phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynamicalReference {
    /// The post-quench Hamiltonian (the evolution generator); cancels
    /// the dynamical phase exactly and is the default.
    Post,
    /// The pre-quench Hamiltonian, kept for convention comparison.
    Pre,
}

/// Which columns of the CSV schema get filled in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OutputSet {
    pub gamma_g: bool,
    pub gamma_g_unwrapped: bool,
    pub magnitude: bool,
    pub concurrence: bool,
    pub populations: bool,
}

impl OutputSet {
    /// The default column set: principal phase, its visibility, and the
    /// concurrence.
    pub fn standard() -> Self {
        OutputSet {
            gamma_g: true,
            magnitude: true,
            concurrence: true,
            ..OutputSet::default()
        }
    }

    /// True when any requested column requires the phase computation.
    pub fn needs_phase(&self) -> bool {
        self.gamma_g || self.gamma_g_unwrapped || self.magnitude
    }

    fn parse(value: &str) -> Result<Self, CliError> {
        let mut set = OutputSet::default();
        let mut seen = HashSet::new();
        for name in value.split(',') {
            let name = name.trim();
            if !seen.insert(name) {
                return Err(CliError::Config(format!("output `{name}` listed twice")));
            }
            match name {
                "gamma_g" => set.gamma_g = true,
                "gamma_g_unwrapped" => set.gamma_g_unwrapped = true,
                "magnitude" => set.magnitude = true,
                "concurrence" => set.concurrence = true,
                "populations" => set.populations = true,
                other => {
                    return Err(CliError::Config(format!(
                        "unknown output `{other}`; valid outputs are gamma_g, \
                         gamma_g_unwrapped, magnitude, concurrence, populations"
                    )))
                }
            }
        }
        if set == OutputSet::default() {
            return Err(CliError::Config("outputs must name at least one column".into()));
        }
        Ok(set)
    }
}

/// A fully expanded sweep: one value list per parameter plus output and
/// oracle settings. Rows run in row-major order with `J` outermost and
/// `t` innermost.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Shipped scenario this config came from, or "custom".
    pub scenario: String,
    pub j: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub epsilon: Vec<f64>,
    pub beta: Vec<f64>,
    pub t: Vec<f64>,
    pub outputs: OutputSet,
    /// Also evaluate the discretized-connection form and emit the
    /// absolute phase difference in the `oracle_delta` column.
    pub oracle_check: bool,
    /// Step count for the discretized form.
    pub steps: usize,
    pub max_rows: usize,
    pub dynamical_reference: DynamicalReference,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            scenario: "custom".into(),
            j: vec![1.0],
            c: vec![1.0],
            d: vec![0.0],
            epsilon: vec![0.0],
            beta: vec![1.0],
            t: vec![1.0],
            outputs: OutputSet::standard(),
            oracle_check: false,
            steps: DEFAULT_STEPS,
            max_rows: DEFAULT_MAX_ROWS,
            dynamical_reference: DynamicalReference::Post,
        }
    }
}

impl SweepConfig {
    /// Total number of rows the sweep would emit, saturating at
    /// `u128::MAX` if the product overflows.
    pub fn row_count(&self) -> u128 {
        [&self.j, &self.c, &self.d, &self.epsilon, &self.beta, &self.t]
            .iter()
            .try_fold(1u128, |acc, grid| acc.checked_mul(grid.len() as u128))
            .unwrap_or(u128::MAX)
    }
}

/// Flag values that override whatever the config file says.
#[derive(Clone, Copy, Debug, Default)]
pub struct CliOverrides {
    pub steps: Option<usize>,
    pub oracle: bool,
    pub dynamical_reference: Option<DynamicalReference>,
}

/// Applies command-line overrides on top of a parsed config and
/// re-validates the result.
pub fn apply_overrides(config: &mut SweepConfig, overrides: &CliOverrides) -> Result<(), CliError> {
    if let Some(steps) = overrides.steps {
        config.steps = steps;
    }
    if overrides.oracle {
        config.oracle_check = true;
    }
    if let Some(reference) = overrides.dynamical_reference {
        config.dynamical_reference = reference;
    }
    validate(config)
}

/// Names of the shipped scenarios, in presentation order.
pub fn scenario_names() -> &'static [&'static str] {
    &["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"]
}

/// The embedded config text of a shipped scenario.
pub fn scenario_text(name: &str) -> Option<&'static str> {
    match name {
        "fig1" => Some(include_str!("../scenarios/fig1.cfg")),
        "fig2" => Some(include_str!("../scenarios/fig2.cfg")),
        "fig3" => Some(include_str!("../scenarios/fig3.cfg")),
        "fig4" => Some(include_str!("../scenarios/fig4.cfg")),
        "fig5" => Some(include_str!("../scenarios/fig5.cfg")),
        "fig6" => Some(include_str!("../scenarios/fig6.cfg")),
        "fig7" => Some(include_str!("../scenarios/fig7.cfg")),
        _ => None,
    }
}

/// Parses and validates a config from file contents.
pub fn config_from_text(text: &str) -> Result<SweepConfig, CliError> {
    let pairs = split_pairs(text)?;
    let mut config = SweepConfig::default();

    if let Some((_, name)) = pairs.iter().find(|(key, _)| key == "scenario") {
        let base = scenario_text(name).ok_or_else(|| unknown_scenario(name))?;
        for (key, value) in split_pairs(base)? {
            apply_pair(&mut config, &key, &value)?;
        }
        config.scenario = name.clone();
    }

    for (key, value) in &pairs {
        if key == "scenario" {
            continue;
        }
        apply_pair(&mut config, key, value)?;
    }

    validate(&config)?;
    Ok(config)
}

/// Reads and parses a config file.
pub fn config_from_path(path: &Path) -> Result<SweepConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    config_from_text(&text)
}

/// Loads a shipped scenario by name.
pub fn config_from_scenario(name: &str) -> Result<SweepConfig, CliError> {
    let text = scenario_text(name).ok_or_else(|| unknown_scenario(name))?;
    let mut config = config_from_text(text)?;
    config.scenario = name.into();
    Ok(config)
}

/// Checks grid sizes and cross-key constraints; called by every
/// constructor and again after flag overrides.
pub fn validate(config: &SweepConfig) -> Result<(), CliError> {
    let rows = config.row_count();
    if rows > config.max_rows as u128 {
        return Err(CliError::GridTooLarge {
            rows,
            cap: config.max_rows,
        });
    }
    if config.outputs.gamma_g_unwrapped {
        for i in 1..config.t.len() {
            if config.t[i] <= config.t[i - 1] {
                return Err(CliError::NonMonotonicTimeGrid {
                    index: i,
                    t: config.t[i],
                });
            }
        }
    }
    if config.oracle_check && config.steps < tol::MIN_INTEGRATION_STEPS {
        return Err(CliError::Config(format!(
            "steps = {} is below the minimum of {} required by the oracle",
            config.steps,
            tol::MIN_INTEGRATION_STEPS
        )));
    }
    Ok(())
}

/// `count` evenly spaced points from `start` to `stop` inclusive, with
/// the endpoints reproduced exactly.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "linspace needs at least two points");
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == 0 {
                start
            } else if i == count - 1 {
                stop
            } else {
                (start * (count - 1 - i) as f64 + stop * i as f64) / last
            }
        })
        .collect()
}

fn unknown_scenario(name: &str) -> CliError {
    CliError::Config(format!(
        "unknown scenario `{name}`; available scenarios: {}",
        scenario_names().join(", ")
    ))
}

fn split_pairs(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut seen = HashSet::new();
    let mut pairs = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = index + 1;
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("line {lineno}: expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(CliError::Config(format!("line {lineno}: missing key")));
        }
        if value.is_empty() {
            return Err(CliError::Config(format!(
                "line {lineno}: key `{key}` has an empty value"
            )));
        }
        if !seen.insert(key.to_string()) {
            return Err(CliError::Config(format!(
                "line {lineno}: duplicate key `{key}`"
            )));
        }
        pairs.push((key.to_string(), value.to_string()));
    }
    Ok(pairs)
}

fn apply_pair(config: &mut SweepConfig, key: &str, value: &str) -> Result<(), CliError> {
    match key {
        "J" => config.j = parse_grid(key, value)?,
        "C" => config.c = parse_grid(key, value)?,
        "D" => config.d = parse_grid(key, value)?,
        "epsilon" => config.epsilon = parse_grid(key, value)?,
        "beta" => config.beta = parse_grid(key, value)?,
        "t" => config.t = parse_grid(key, value)?,
        "outputs" => config.outputs = OutputSet::parse(value)?,
        "oracle_check" => config.oracle_check = parse_bool(key, value)?,
        "steps" => config.steps = parse_count(key, value)?,
        "max_rows" => config.max_rows = parse_count(key, value)?,
        "dynamical_h" => {
            config.dynamical_reference = match value {
                "post" => DynamicalReference::Post,
                "pre" => DynamicalReference::Pre,
                other => {
                    return Err(CliError::Config(format!(
                        "dynamical_h must be `post` or `pre`, got `{other}`"
                    )))
                }
            }
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown key `{other}`; known keys are J, C, D, epsilon, beta, t, \
                 outputs, oracle_check, steps, max_rows, dynamical_h, scenario"
            )))
        }
    }
    Ok(())
}

/// Parses a grid value: either `start:stop:count` or a comma list.
pub fn parse_grid(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    if value.contains(':') {
        let parts: Vec<&str> = value.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Config(format!(
                "grid `{key}` must be `start:stop:count`, got `{value}`"
            )));
        }
        let start = parse_f64(key, parts[0])?;
        let stop = parse_f64(key, parts[1])?;
        let count = parse_count(key, parts[2])?;
        if count == 1 {
            if start != stop {
                return Err(CliError::Config(format!(
                    "grid `{key}`: a one-point range requires start = stop"
                )));
            }
            return Ok(vec![start]);
        }
        Ok(linspace(start, stop, count))
    } else {
        value
            .split(',')
            .map(|piece| parse_f64(key, piece.trim()))
            .collect()
    }
}

fn parse_f64(key: &str, text: &str) -> Result<f64, CliError> {
    let x: f64 = text
        .parse()
        .map_err(|_| CliError::Config(format!("key `{key}`: `{text}` is not a number")))?;
    if !x.is_finite() {
        return Err(CliError::Config(format!(
            "key `{key}`: `{text}` is not finite"
        )));
    }
    Ok(x)
}

fn parse_count(key: &str, text: &str) -> Result<usize, CliError> {
    let n: usize = text
        .parse()
        .map_err(|_| CliError::Config(format!("key `{key}`: `{text}` is not a positive integer")))?;
    if n == 0 {
        return Err(CliError::Config(format!("key `{key}` must be at least 1")));
    }
    Ok(n)
}

fn parse_bool(key: &str, text: &str) -> Result<bool, CliError> {
    match text {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(CliError::Config(format!(
            "key `{key}` must be `true` or `false`, got `{other}`"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_single_point_grids() {
        let config = config_from_text("").unwrap();
        assert_eq!(config.j, vec![1.0]);
        assert_eq!(config.c, vec![1.0]);
        assert_eq!(config.d, vec![0.0]);
        assert_eq!(config.epsilon, vec![0.0]);
        assert_eq!(config.beta, vec![1.0]);
        assert_eq!(config.t, vec![1.0]);
        assert_eq!(config.steps, DEFAULT_STEPS);
        assert_eq!(config.max_rows, DEFAULT_MAX_ROWS);
        assert!(!config.oracle_check);
        assert_eq!(config.dynamical_reference, DynamicalReference::Post);
        assert_eq!(config.row_count(), 1);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let config = config_from_text(
            "# full-line comment\n\nJ = 2    # trailing comment\n  beta = 0.5, 1.5\n",
        )
        .unwrap();
        assert_eq!(config.j, vec![2.0]);
        assert_eq!(config.beta, vec![0.5, 1.5]);
    }

    #[test]
    fn ranges_expand_with_exact_endpoints() {
        let grid = parse_grid("J", "-10:10:201").unwrap();
        assert_eq!(grid.len(), 201);
        assert_eq!(grid[0], -10.0);
        assert_eq!(grid[200], 10.0);
        assert_eq!(grid[100], 0.0);

        let fractional = parse_grid("t", "0.1:0.7:3").unwrap();
        assert_eq!(fractional[0], 0.1);
        assert_eq!(fractional[2], 0.7);
        assert!((fractional[1] - 0.4).abs() < 1e-16);
    }

    #[test]
    fn one_point_ranges_need_equal_endpoints() {
        assert_eq!(parse_grid("t", "2:2:1").unwrap(), vec![2.0]);
        assert!(parse_grid("t", "1:2:1").is_err());
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(matches!(
            config_from_text("J 1").unwrap_err(),
            CliError::Config(_)
        ));
        assert!(config_from_text("J =").is_err());
        assert!(config_from_text("= 3").is_err());
        assert!(config_from_text("J = abc").is_err());
        assert!(config_from_text("J = inf").is_err());
        assert!(config_from_text("J = NaN").is_err());
    }

    #[test]
    fn duplicate_and_unknown_keys_are_rejected() {
        let err = config_from_text("J = 1\nJ = 2").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
        let err = config_from_text("jay = 1").unwrap_err();
        assert!(err.to_string().contains("unknown key"), "{err}");
    }

    #[test]
    fn outputs_parse_and_reject_typos() {
        let config = config_from_text("outputs = gamma_g_unwrapped, populations\nt = 0:1:5").unwrap();
        assert!(config.outputs.gamma_g_unwrapped);
        assert!(config.outputs.populations);
        assert!(!config.outputs.gamma_g);
        assert!(config_from_text("outputs = gamma").is_err());
        assert!(config_from_text("outputs = gamma_g, gamma_g").is_err());
    }

    #[test]
    fn scenario_key_merges_under_file_keys() {
        let config = config_from_text("scenario = fig3\nbeta = 7").unwrap();
        assert_eq!(config.scenario, "fig3");
        assert_eq!(config.beta, vec![7.0]);
        assert_eq!(config.j.len(), 201, "grid comes from the scenario");
        assert!(config_from_text("scenario = fig99").is_err());
    }

    #[test]
    fn every_shipped_scenario_parses() {
        for name in scenario_names() {
            let config = config_from_scenario(name).unwrap();
            assert_eq!(&config.scenario, name);
            assert!(config.row_count() >= 1);
        }
    }

    #[test]
    fn grid_cap_is_enforced() {
        let err = config_from_text("t = 0:1:2000\nbeta = 0:1:2000\nmax_rows = 1000000").unwrap_err();
        assert!(matches!(err, CliError::GridTooLarge { rows: 4_000_000, cap: 1_000_000 }));
    }

    #[test]
    fn unwrapped_output_requires_increasing_time() {
        let err = config_from_text("outputs = gamma_g_unwrapped\nt = 0, 2, 1").unwrap_err();
        assert!(matches!(err, CliError::NonMonotonicTimeGrid { index: 2, .. }));
        assert!(config_from_text("outputs = gamma_g_unwrapped\nt = 0, 1, 2").is_ok());
    }

    #[test]
    fn oracle_step_floor_is_enforced() {
        let err = config_from_text("oracle_check = true\nsteps = 50").unwrap_err();
        assert!(err.to_string().contains("minimum"), "{err}");
    }

    #[test]
    fn overrides_win_over_file_values() {
        let mut config = config_from_text("steps = 500\ndynamical_h = post").unwrap();
        let overrides = CliOverrides {
            steps: Some(2000),
            oracle: true,
            dynamical_reference: Some(DynamicalReference::Pre),
        };
        apply_overrides(&mut config, &overrides).unwrap();
        assert_eq!(config.steps, 2000);
        assert!(config.oracle_check);
        assert_eq!(config.dynamical_reference, DynamicalReference::Pre);

        let bad = CliOverrides {
            steps: Some(10),
            oracle: true,
            dynamical_reference: None,
        };
        assert!(apply_overrides(&mut config, &bad).is_err());
    }
}
