//! `fixsum`: profiles, kernels, Poisson diagnostics, oracle checks and
//! sampling for the fixed-point label sum, as CSV or JSON.
//!
//! Exit codes: 0 success, 1 oracle mismatch, 2 unknown family or command
//! (or a family without a sampler), 3 invalid arguments.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Parser)]
#[command(
    name = "fixsum",
    version,
    about = "Sum of fixed-point labels on labeled families"
)]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Decimal digits for real-valued columns.
    #[arg(long, global = true, default_value_t = 10)]
    pub precision: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Dense exact profile f(n, r), r = 0..=r_max.
    Profile {
        family: String,
        n: usize,
        #[arg(long)]
        r_max: Option<usize>,
    },
    /// c_2..c_6, K_mu and the predicted scaled profile on an alpha grid.
    Kernel {
        mu: f64,
        alpha_min: f64,
        alpha_max: f64,
        step: f64,
    },
    /// Measured Poisson parameters and the fixed-point pmf table.
    Poisson {
        family: String,
        n: usize,
        k_max: usize,
    },
    /// f(n, r)/g(1, n) against its predicted limit; mu may be `auto`.
    Compare {
        family: String,
        n: usize,
        mu: String,
        alpha_min: f64,
        alpha_max: f64,
    },
    /// Exact profile against brute-force enumeration.
    Oracle { family: String, n: usize },
    /// Seeded Monte-Carlo histogram of the label sum.
    Sample {
        family: String,
        n: usize,
        trials: u64,
        seed: u64,
        /// Discard draws without fixed points.
        #[arg(long)]
        conditioned: bool,
    },
    /// Registered families.
    Families,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<fixsum::Error> for Failure {
    fn from(e: fixsum::Error) -> Self {
        let code = match e {
            fixsum::Error::UnknownFamily(_) | fixsum::Error::UnsupportedFamily(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("FIXSUM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::invalid(format!("FIXSUM_THREADS must be a count, got {raw:?}")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::invalid(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    configure_threads()?;
    let (table, code) = match cli.command {
        Command::Profile { family, n, r_max } => (commands::profile(&family, n, r_max)?, 0),
        Command::Kernel {
            mu,
            alpha_min,
            alpha_max,
            step,
        } => (commands::kernel(mu, alpha_min, alpha_max, step)?, 0),
        Command::Poisson { family, n, k_max } => (commands::poisson(&family, n, k_max)?, 0),
        Command::Compare {
            family,
            n,
            mu,
            alpha_min,
            alpha_max,
        } => (commands::compare(&family, n, &mu, alpha_min, alpha_max)?, 0),
        Command::Oracle { family, n } => {
            let (table, matched) = commands::oracle(&family, n)?;
            (table, if matched { 0 } else { 1 })
        }
        Command::Sample {
            family,
            n,
            trials,
            seed,
            conditioned,
        } => (commands::sample(&family, n, trials, seed, conditioned)?, 0),
        Command::Families => (commands::families(), 0),
    };
    let text = table.render(cli.output.format, cli.output.precision);
    match &cli.output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand => 2,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
