mod dataset;
mod error;
mod format;
mod spectrum;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;
use spectrum::SpectrumArgs;

/// Mapping cone Morse complexes and their Witten-deformed spectra.
#[derive(Debug, Parser)]
#[command(name = "cone-morse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a dataset (file path or builtin name) and print μ.
    Validate { dataset: String },
    /// μ_k, b_k, b^ω_k, R_k and v_k per degree.
    Cohomology {
        dataset: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Morse equalities, inequalities and the cohomology decomposition.
    Corollaries {
        dataset: Option<String>,
        /// Also check N seeded random complexes.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Spectral scan of the deformed cone on the torus.
    Spectrum(SpectrumArgs),
}

/// `CONE_MORSE_THREADS` caps the scan thread pool.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("CONE_MORSE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| CliError::Validation(format!("CONE_MORSE_THREADS must be a count, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Numerical(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Validate { dataset } => dataset::cmd_validate(dataset),
        Command::Cohomology { dataset, json } => dataset::cmd_cohomology(dataset, json.as_ref()),
        Command::Corollaries {
            dataset,
            random,
            seed,
            json,
        } => dataset::cmd_corollaries(dataset.as_deref(), *random, *seed, json.as_ref()),
        Command::Spectrum(args) => spectrum::cmd_spectrum(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
