//! `freshopt`: optimal cache refresh intervals from the command line.

mod commands;
mod input;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::SimulateArgs;
use input::ScenarioFile;
use output::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or schema-invalid input, bad flags.
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] freshopt_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) if e.is_numeric() => 4,
            CliError::Core(_) => 3,
        }
    }
}

/// Warnings on standard error, silenced by `--quiet`.
pub struct Notes {
    quiet: bool,
}

impl Notes {
    pub fn warn(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("freshopt: warning: {}", msg.as_ref());
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "freshopt",
    version,
    about = "Optimal cache refresh intervals under Poisson updates"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Format,

    /// Suppress warnings.
    #[arg(long, short, global = true)]
    quiet: bool,

    /// Worker threads for simulations.
    #[arg(long, global = true, env = "FRESHOPT_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal refresh interval and its cost.
    Optimize { scenario: PathBuf },
    /// Long-run cost over a log-spaced range of intervals.
    Curve {
        scenario: PathBuf,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Monte Carlo estimate of the long-run cost.
    Simulate {
        scenario: PathBuf,
        /// Number of refresh cycles (overrides sim.n_cycles).
        #[arg(long)]
        cycles: Option<u64>,
        /// RNG seed (overrides sim.seed).
        #[arg(long)]
        seed: Option<u64>,
        /// Simulate a fixed interval instead of the file's schedule.
        #[arg(long)]
        interval: Option<f64>,
        /// Write per-cycle records as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Random refresh intervals against the fixed interval with the same mean.
    Compare {
        scenario: PathBuf,
        /// Interval distribution as JSON, e.g. '{"kind":"exponential","mean":2}'.
        #[arg(long)]
        dist: Option<String>,
    },
    /// Shared refresh interval for a fleet of elements.
    Fleet { scenario: PathBuf },
    /// Optimal interval across update rates.
    SweepLambda {
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Optimal interval across refresh costs.
    SweepCost {
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
}

fn emit<T: Serialize>(report: Report<T>, format: Format) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    report
        .emit(format, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Input(format!("writing output: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    }
    let notes = Notes { quiet: cli.quiet };
    let fmt = cli.output;
    match &cli.command {
        Command::Optimize { scenario } => {
            emit(commands::optimize(&ScenarioFile::load(scenario)?)?, fmt)
        }
        Command::Curve {
            scenario,
            t_min,
            t_max,
            points,
        } => {
            let file = ScenarioFile::load(scenario)?;
            emit(
                commands::curve(&file, *t_min, *t_max, *points, &notes)?,
                fmt,
            )
        }
        Command::Simulate {
            scenario,
            cycles,
            seed,
            interval,
            trace,
        } => {
            let file = ScenarioFile::load(scenario)?;
            let args = SimulateArgs {
                cycles: *cycles,
                seed: *seed,
                interval: *interval,
                trace: trace.as_deref(),
            };
            emit(commands::simulate_cmd(&file, &args, &notes)?, fmt)
        }
        Command::Compare { scenario, dist } => {
            let file = ScenarioFile::load(scenario)?;
            emit(commands::compare(&file, dist.as_deref())?, fmt)
        }
        Command::Fleet { scenario } => emit(commands::fleet(&ScenarioFile::load(scenario)?)?, fmt),
        Command::SweepLambda { scenario, values } => emit(
            commands::sweep_rates(&ScenarioFile::load(scenario)?, values)?,
            fmt,
        ),
        Command::SweepCost { scenario, values } => emit(
            commands::sweep_costs(&ScenarioFile::load(scenario)?, values)?,
            fmt,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("freshopt: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
