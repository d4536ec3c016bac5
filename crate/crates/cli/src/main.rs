//! `qstep`: tabulates potentials, coefficients and wavefunctions of the
//! smooth step and runs the self-validation suite.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "qstep", version, about = "Exact scattering by the tanh step potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Potential profiles V(x), one column per delta.
    Potential(RunArgs),
    /// Reflection and transmission coefficients against E/V0.
    Coeffs(RunArgs),
    /// Wavefunction, density and probability current on a grid.
    Wave(RunArgs),
    /// Run the validation suite; exit status 1 on any failure.
    Validate(ValidateArgs),
    /// Convergence towards the abrupt step as delta grows.
    Limit(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Barrier height (dimensionless, hbar^2/2m = 1).
    #[arg(long, default_value_t = 1.0)]
    pub v0: f64,
    /// Deformation parameter(s), comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub delta: Vec<f64>,
    /// Energy ratio(s) E/V0, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "energy")]
    pub ratio: Vec<f64>,
    /// Absolute (dimensionless) energy.
    #[arg(long)]
    pub energy: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Upper end of the ratio sweep for `coeffs`.
    #[arg(long)]
    pub ratio_max: Option<f64>,
    /// Reproduce the parameter grid of a figure (1: potential, 2-5: wave, 6: coeffs).
    #[arg(long)]
    pub figure: Option<u8>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Scale every log-Gamma value by (1 + EPS) to check that faults are caught.
    #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
    pub perturb_gamma: Option<f64>,
    /// Only run the below-barrier checks.
    #[arg(long)]
    pub below_only: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Potential(args) => commands::potential(&args).and_then(|t| commands::write(&t, &args)),
        Command::Coeffs(args) => commands::coeffs(&args).and_then(|t| commands::write(&t, &args)),
        Command::Wave(args) => commands::wave(&args).and_then(|t| commands::write(&t, &args)),
        Command::Limit(args) => commands::limit(&args).and_then(|t| commands::write(&t, &args)),
        Command::Validate(args) => commands::validate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::ValidationFailed) => ExitCode::from(1),
        Err(CliError::Runtime(msg)) => {
            eprintln!("qstep: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("qstep: error: {msg}");
            ExitCode::from(2)
        }
    }
}
