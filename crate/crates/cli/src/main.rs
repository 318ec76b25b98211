//! `spinphase`: parameter sweeps over a quenched two-spin system,
//! emitting geometric phase and concurrence as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spinphase_cli::{
    apply_overrides, check, config_from_path, config_from_scenario, config_from_text,
    run_sweep, scenario_names, CliError, CliOverrides, DynamicalReference,
};

#[derive(Parser)]
#[command(
    name = "spinphase",
    version,
    about = "Geometric phase and concurrence sweeps for a quenched two-spin system",
    after_help = "Exit codes: 0 success, 1 configuration error, 2 numeric failure mid-run."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write CSV here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Step count for the discretized-connection oracle.
    #[arg(long, global = true, value_name = "N")]
    steps: Option<usize>,

    /// Also run the discretized-connection form and emit oracle_delta.
    #[arg(long, global = true)]
    oracle: bool,

    /// Hamiltonian supplying the dynamical counter-phase.
    #[arg(long = "dynamical-h", global = true, value_enum, value_name = "WHICH")]
    dynamical_h: Option<DynamicalArg>,

    /// Worker threads for the sweep (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DynamicalArg {
    /// Post-quench Hamiltonian: cancels the dynamical phase exactly.
    Post,
    /// Pre-quench Hamiltonian: alternative bookkeeping, for comparison.
    Pre,
}

impl From<DynamicalArg> for DynamicalReference {
    fn from(arg: DynamicalArg) -> Self {
        match arg {
            DynamicalArg::Post => DynamicalReference::Post,
            DynamicalArg::Pre => DynamicalReference::Pre,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a config file.
    Sweep {
        /// Path to a `key = value` config file.
        config: PathBuf,
    },
    /// Run a shipped scenario by name (fig1 through fig7).
    Scenario {
        /// Scenario name; see `--help` for the list.
        name: String,
    },
    /// Evaluate a single parameter point and print one CSV row.
    Point {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        j: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        /// Also emit the four thermal populations.
        #[arg(long)]
        populations: bool,
    },
    /// Run the invariant suite and print one verdict line per criterion.
    Check,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot size the thread pool: {e}")))?;
    }

    let overrides = CliOverrides {
        steps: cli.steps,
        oracle: cli.oracle,
        dynamical_reference: cli.dynamical_h.map(DynamicalReference::from),
    };

    let mut out = open_output(cli.out.as_deref())?;
    let code = match cli.command {
        Command::Sweep { config } => {
            let mut config = config_from_path(&config)?;
            apply_overrides(&mut config, &overrides)?;
            run_sweep(&config, &mut out)?;
            ExitCode::SUCCESS
        }
        Command::Scenario { name } => {
            let mut config = config_from_scenario(&name).map_err(|e| match e {
                CliError::Config(msg) => {
                    CliError::Config(format!("{msg} (try one of: {})", scenario_names().join(", ")))
                }
                other => other,
            })?;
            apply_overrides(&mut config, &overrides)?;
            run_sweep(&config, &mut out)?;
            ExitCode::SUCCESS
        }
        Command::Point {
            j,
            c,
            d,
            epsilon,
            beta,
            t,
            populations,
        } => {
            let mut text = format!(
                "J = {j}\nC = {c}\nD = {d}\nepsilon = {epsilon}\nbeta = {beta}\nt = {t}\n"
            );
            if populations {
                text.push_str("outputs = gamma_g, magnitude, concurrence, populations\n");
            }
            let mut config = config_from_text(&text)?;
            apply_overrides(&mut config, &overrides)?;
            run_sweep(&config, &mut out)?;
            ExitCode::SUCCESS
        }
        Command::Check => {
            let outcomes = check::run_all();
            for line in &outcomes {
                writeln!(out, "{line}")?;
            }
            if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    };

    out.flush()?;
    Ok(code)
}

fn open_output(path: Option<&std::path::Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}
