//! `syk`: sampling, encoding, compilation and simulation of SYK models.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Status;
use config::{ExperimentConfig, Overrides, ValidationError};

const AFTER_HELP: &str = "\
Exit codes: 0 success, 1 runtime or I/O failure, 2 invalid configuration or input, \
3 a computed quantity disagreed with its reference.

Environment: SYK_DENSE_QUBIT_CAP sets the largest qubit count for dense matrices \
(default 14). RUST_LOG controls log output (default warn).";

#[derive(Debug, Parser)]
#[command(name = "syk", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form term counts next to enumeration, for every n in the grid
    /// (Majorana models use N = 2n).
    Counts,
    /// Draw one coupling realization as JSON.
    Sample,
    /// Jordan-Wigner encode a realization into a spin Hamiltonian.
    Encode {
        /// Couplings JSON from `sample`; sampled from the config when absent.
        #[arg(long)]
        couplings: Option<PathBuf>,
    },
    /// Trotterize and compile a Hamiltonian for the configured target.
    Compile {
        /// Hamiltonian text from `encode`; sampled from the config when absent.
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
    },
    /// Trotter errors, OTOCs and correlations per seed, t and s as CSV.
    Simulate,
    /// OTOC values by the ancilla protocols and the direct oracle.
    Otoc,
    /// Gate counts of one Trotter step across the size grid.
    Resources {
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
        /// Compare per-shape term counts with their closed forms instead.
        #[arg(long)]
        shapes: bool,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    let config = ExperimentConfig::resolve(&cli.overrides)?;
    match &cli.command {
        Command::Counts => commands::counts(&config),
        Command::Sample => commands::sample_cmd(&config),
        Command::Encode { couplings } => commands::encode(&config, couplings.as_deref()),
        Command::Compile { hamiltonian } => commands::compile(&config, hamiltonian.as_deref()),
        Command::Simulate => commands::simulate(&config),
        Command::Otoc => commands::otoc(&config),
        Command::Resources { hamiltonian, shapes } => commands::resources(&config, hamiltonian.as_deref(), *shapes),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ValidationError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<syk_core::Error>() {
        Some(syk_core::Error::Io(_)) | None => 1,
        Some(_) => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
