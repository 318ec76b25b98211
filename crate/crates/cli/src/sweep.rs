//! The sweep engine: grid iteration, per-row physics, parallel
//! execution, and CSV emission.
//!
//! Rows run in row-major order with `J` outermost and `t` innermost.
//! All t-values sharing the other five parameters form a group: the
//! thermal state is prepared once per group and phase unwrapping runs
//! along the group's time axis. Groups are computed in parallel but
//! always written in grid order, so output is byte-identical across
//! runs and thread counts.

use std::io::Write;

use rayon::prelude::*;
use spinphase_core::{
    concurrence, evolve_under, geometric_phase_closed, geometric_phase_closed_with_reference,
    geometric_phase_integrated, gibbs_state, hamiltonian_pair, principal_difference, SpinParams,
};

use crate::config::{DynamicalReference, SweepConfig};
use crate::error::CliError;
use crate::unwrap::unwrap_phase;

/// The fixed CSV column order. With `populations` requested, four
/// extra columns follow.
pub const CSV_HEADER: &str =
    "J,C,D,epsilon,beta,t,gamma_g,gamma_g_unwrapped,magnitude,concurrence,oracle_delta";

/// Header suffix for the optional population columns.
pub const POPULATION_COLUMNS: &str = "p1,p2,p3,p4";

/// Groups processed per parallel batch; bounds peak memory while
/// keeping every worker busy.
const GROUP_CHUNK: usize = 256;

/// One evaluated grid point. Optional fields are `None` when the
/// quantity is ill-defined there (a vanishing overlap sum) or was not
/// computed; the writer leaves the CSV field empty either way.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub j: f64,
    pub c: f64,
    pub d: f64,
    pub epsilon: f64,
    pub beta: f64,
    pub t: f64,
    pub gamma_g: Option<f64>,
    pub gamma_g_unwrapped: Option<f64>,
    pub magnitude: Option<f64>,
    pub concurrence: Option<f64>,
    pub oracle_delta: Option<f64>,
    pub populations: Option<[f64; 4]>,
}

#[derive(Clone, Copy)]
struct GroupParams {
    j: f64,
    c: f64,
    d: f64,
    epsilon: f64,
    beta: f64,
}

impl GroupParams {
    fn label(&self, t: Option<f64>) -> String {
        let mut s = format!(
            "J={} C={} D={} epsilon={} beta={}",
            self.j, self.c, self.d, self.epsilon, self.beta
        );
        if let Some(t) = t {
            s.push_str(&format!(" t={t}"));
        }
        s
    }
}

fn group_count(config: &SweepConfig) -> usize {
    config.j.len() * config.c.len() * config.d.len() * config.epsilon.len() * config.beta.len()
}

/// Group parameters at a linear index, `J` varying slowest and `beta`
/// fastest among the five.
fn group_at(config: &SweepConfig, index: usize) -> GroupParams {
    let bn = config.beta.len();
    let en = config.epsilon.len();
    let dn = config.d.len();
    let cn = config.c.len();
    GroupParams {
        beta: config.beta[index % bn],
        epsilon: config.epsilon[(index / bn) % en],
        d: config.d[(index / (bn * en)) % dn],
        c: config.c[(index / (bn * en * dn)) % cn],
        j: config.j[index / (bn * en * dn * cn)],
    }
}

fn compute_group(config: &SweepConfig, group: GroupParams) -> Result<Vec<SweepRow>, CliError> {
    let at = |t: Option<f64>, source| CliError::Compute {
        point: group.label(t),
        source,
    };

    let params = SpinParams::new(group.j, group.c, group.d, group.epsilon);
    let (h, hp) = hamiltonian_pair(&params);
    let state = gibbs_state(&h, group.beta).map_err(|e| at(None, e))?;
    let populations = config.outputs.populations.then(|| {
        let p = state.populations();
        [p[0], p[1], p[2], p[3]]
    });

    let need_phase = config.outputs.needs_phase() || config.oracle_check;
    let mut rows = Vec::with_capacity(config.t.len());
    for &t in &config.t {
        let mut row = SweepRow {
            j: group.j,
            c: group.c,
            d: group.d,
            epsilon: group.epsilon,
            beta: group.beta,
            t,
            gamma_g: None,
            gamma_g_unwrapped: None,
            magnitude: None,
            concurrence: None,
            oracle_delta: None,
            populations,
        };

        if need_phase {
            let post = geometric_phase_closed(&state, &hp, t).map_err(|e| at(Some(t), e))?;
            let emitted = match config.dynamical_reference {
                DynamicalReference::Post => post,
                DynamicalReference::Pre => {
                    geometric_phase_closed_with_reference(&state, &hp, t, &h)
                        .map_err(|e| at(Some(t), e))?
                }
            };
            row.gamma_g = emitted.well_defined.then_some(emitted.gamma);
            row.magnitude = Some(emitted.magnitude);

            if config.oracle_check {
                let walked = geometric_phase_integrated(&state, &hp, t, config.steps)
                    .map_err(|e| at(Some(t), e))?;
                // The discretized connection has no reference freedom;
                // it is always compared against the post-quench closed
                // form, whatever reference the gamma_g column uses.
                row.oracle_delta = (post.well_defined && walked.well_defined)
                    .then(|| principal_difference(post.gamma, walked.gamma).abs());
            }
        }

        if config.outputs.concurrence {
            let evolved = evolve_under(&state, &hp, t).map_err(|e| at(Some(t), e))?;
            let out = concurrence(&evolved.rho_t).map_err(|e| at(Some(t), e))?;
            row.concurrence = Some(out.value);
        }

        rows.push(row);
    }

    if config.outputs.gamma_g_unwrapped {
        let series: Vec<(f64, Option<f64>)> = rows.iter().map(|r| (r.t, r.gamma_g)).collect();
        for (row, lifted) in rows.iter_mut().zip(unwrap_phase(&series)?) {
            row.gamma_g_unwrapped = lifted;
        }
    }

    Ok(rows)
}

/// Runs the sweep, handing each group's rows to `sink` in grid order.
fn drive<F>(config: &SweepConfig, mut sink: F) -> Result<(), CliError>
where
    F: FnMut(Vec<SweepRow>) -> Result<(), CliError>,
{
    let total = group_count(config);
    let mut start = 0;
    while start < total {
        let end = usize::min(start + GROUP_CHUNK, total);
        let results: Vec<Result<Vec<SweepRow>, CliError>> = (start..end)
            .into_par_iter()
            .map(|i| compute_group(config, group_at(config, i)))
            .collect();
        for rows in results {
            sink(rows?)?;
        }
        start = end;
    }
    Ok(())
}

/// Runs the sweep and writes the CSV (header plus one line per grid
/// point) to `out`.
pub fn run_sweep(config: &SweepConfig, out: &mut dyn Write) -> Result<(), CliError> {
    write_header(config, out)?;
    drive(config, |rows| {
        for row in &rows {
            write_row(config, row, out)?;
        }
        Ok(())
    })
}

/// Runs the sweep and collects every row in grid order; used by the
/// invariant checks and tests. Memory scales with the full grid, so
/// prefer [`run_sweep`] for large sweeps.
pub fn collect_rows(config: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    let mut all = Vec::new();
    drive(config, |mut rows| {
        all.append(&mut rows);
        Ok(())
    })?;
    Ok(all)
}

fn write_header(config: &SweepConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if config.outputs.populations {
        writeln!(out, "{CSV_HEADER},{POPULATION_COLUMNS}")?;
    } else {
        writeln!(out, "{CSV_HEADER}")?;
    }
    Ok(())
}

/// One numeric field, printed with 17 significant digits so parsing it
/// back recovers the exact double.
fn push_field(line: &mut String, value: f64) {
    use std::fmt::Write as _;
    let _ = write!(line, "{value:.16e}");
}

fn push_optional(line: &mut String, value: Option<f64>, requested: bool) {
    line.push(',');
    if requested {
        if let Some(v) = value {
            push_field(line, v);
        }
    }
}

fn write_row(config: &SweepConfig, row: &SweepRow, out: &mut dyn Write) -> Result<(), CliError> {
    let o = &config.outputs;
    let mut line = String::with_capacity(256);
    push_field(&mut line, row.j);
    for v in [row.c, row.d, row.epsilon, row.beta, row.t] {
        line.push(',');
        push_field(&mut line, v);
    }
    push_optional(&mut line, row.gamma_g, o.gamma_g);
    push_optional(&mut line, row.gamma_g_unwrapped, o.gamma_g_unwrapped);
    push_optional(&mut line, row.magnitude, o.magnitude);
    push_optional(&mut line, row.concurrence, o.concurrence);
    push_optional(&mut line, row.oracle_delta, config.oracle_check);
    if o.populations {
        let p = row.populations.expect("populations computed when requested");
        for v in p {
            line.push(',');
            push_field(&mut line, v);
        }
    }
    line.push('\n');
    out.write_all(line.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::config_from_text;

    fn run_to_string(config: &SweepConfig) -> String {
        let mut buf = Vec::new();
        run_sweep(config, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn header_is_exact_and_lines_use_lf() {
        let config = config_from_text("").unwrap();
        let text = run_to_string(&config);
        let mut lines = text.split_inclusive('\n');
        assert_eq!(lines.next().unwrap(), format!("{CSV_HEADER}\n"));
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 2, "header plus one default row");
    }

    #[test]
    fn populations_request_appends_four_columns() {
        let config = config_from_text("outputs = populations, concurrence").unwrap();
        let text = run_to_string(&config);
        let header = text.lines().next().unwrap();
        assert_eq!(header, format!("{CSV_HEADER},{POPULATION_COLUMNS}"));
        let row = text.lines().nth(1).unwrap();
        assert_eq!(row.split(',').count(), 15);
        let fields: Vec<&str> = row.split(',').collect();
        let total: f64 = fields[11..15].iter().map(|s| s.parse::<f64>().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rows_follow_grid_order_with_t_innermost() {
        let config = config_from_text("J = 1, 2\nbeta = 0.5, 1.5\nt = 0, 1, 2").unwrap();
        let rows = collect_rows(&config).unwrap();
        assert_eq!(rows.len(), 12);
        let key: Vec<(f64, f64, f64)> = rows.iter().map(|r| (r.j, r.beta, r.t)).collect();
        let mut sorted = key.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(key, sorted, "row-major order sorts lexicographically");
        assert_eq!(key[0], (1.0, 0.5, 0.0));
        assert_eq!(key[3], (1.0, 1.5, 0.0));
        assert_eq!(key[6], (2.0, 0.5, 0.0));
    }

    #[test]
    fn unrequested_columns_stay_empty() {
        let config = config_from_text("outputs = gamma_g").unwrap();
        let text = run_to_string(&config);
        let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(fields.len(), 11);
        assert!(!fields[6].is_empty(), "gamma_g requested");
        for &i in &[7, 8, 9, 10] {
            assert!(fields[i].is_empty(), "column {i} not requested");
        }
    }

    #[test]
    fn stationary_point_gives_zero_phase_and_initial_concurrence() {
        let config = config_from_text("t = 7").unwrap();
        let rows = collect_rows(&config).unwrap();
        let row = &rows[0];
        assert!(row.gamma_g.unwrap().abs() < 1e-12);
        let reference = collect_rows(&config_from_text("t = 0").unwrap()).unwrap();
        assert!((row.concurrence.unwrap() - reference[0].concurrence.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn unwrapped_column_continues_across_the_branch_cut() {
        // The pre-quench reference leaves a linear drift in the phase,
        // so the curve is guaranteed to cross the branch cut.
        let config = config_from_text(
            "epsilon = 1\nt = 0:30:301\ndynamical_h = pre\noutputs = gamma_g, gamma_g_unwrapped",
        )
        .unwrap();
        let rows = collect_rows(&config).unwrap();
        let lifted: Vec<f64> = rows.iter().filter_map(|r| r.gamma_g_unwrapped).collect();
        assert!(lifted.len() > 90, "phase defined almost everywhere");
        for pair in lifted.windows(2) {
            assert!((pair[1] - pair[0]).abs() < std::f64::consts::PI);
        }
        let max_lift = lifted
            .iter()
            .zip(rows.iter().filter_map(|r| r.gamma_g))
            .map(|(u, g)| (u - g).abs())
            .fold(0.0f64, f64::max);
        assert!(max_lift > 1.0, "the curve leaves the principal branch");
    }

    #[test]
    fn oracle_delta_is_small_for_a_modest_grid() {
        let config =
            config_from_text("epsilon = -1\nt = 0.5, 1.0, 2.0\noracle_check = true\nsteps = 2000")
                .unwrap();
        let rows = collect_rows(&config).unwrap();
        for row in &rows {
            let delta = row.oracle_delta.unwrap();
            assert!(delta < 1e-5, "t={}: delta={delta:e}", row.t);
        }
    }

    #[test]
    fn beta_failure_names_the_grid_point() {
        let config = config_from_text("beta = 1, -2\nt = 0, 1").unwrap();
        let err = collect_rows(&config).unwrap_err();
        match err {
            CliError::Compute { point, .. } => {
                assert!(point.contains("beta=-2"), "{point}");
            }
            other => panic!("expected Compute, got {other:?}"),
        }
    }

    #[test]
    fn pre_quench_reference_changes_the_emitted_phase() {
        let base = "epsilon = 0.5\nt = 1.3";
        let post = collect_rows(&config_from_text(base).unwrap()).unwrap();
        let pre =
            collect_rows(&config_from_text(&format!("{base}\ndynamical_h = pre")).unwrap())
                .unwrap();
        let gap = (post[0].gamma_g.unwrap() - pre[0].gamma_g.unwrap()).abs();
        assert!(gap > 1e-3, "references should disagree, gap={gap:e}");
    }

    #[test]
    fn fields_round_trip_exactly() {
        let config = config_from_text("J = 0.1, 1\nepsilon = 0.3\nt = 0.7:2.9:3").unwrap();
        let rows = collect_rows(&config).unwrap();
        let text = run_to_string(&config);
        for (line, row) in text.lines().skip(1).zip(rows.iter()) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[0].parse::<f64>().unwrap(), row.j);
            assert_eq!(fields[5].parse::<f64>().unwrap(), row.t);
            assert_eq!(fields[6].parse::<f64>().unwrap(), row.gamma_g.unwrap());
            assert_eq!(fields[9].parse::<f64>().unwrap(), row.concurrence.unwrap());
        }
    }
}
