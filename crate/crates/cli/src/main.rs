//! `oddzeta` command-line driver.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration error,
//! 3 violated precondition, 4 numerical nonconvergence.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use config::RawConfig;
use output::{Meta, OutDir};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(oddzeta::Error),
    #[error("no numerical convergence: {0}")]
    Nonconvergence(oddzeta::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<oddzeta::Error> for CliError {
    fn from(e: oddzeta::Error) -> Self {
        use oddzeta::Error::*;
        match e {
            NonConvergent(_) | NoConvergence(_) => CliError::Nonconvergence(e),
            InvalidInput(m) => CliError::Config(m),
            IndexOutOfRange { .. } => CliError::Config(e.to_string()),
            other => CliError::Precondition(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Nonconvergence(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "oddzeta", version, about = "Odd Selberg zeta functions and eta invariants of Schottky groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Path to the TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads; overrides `[run] threads`.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Conjugacy classes with lengths and holonomies (spectrum.csv).
    Spectrum,
    /// Odd zeta function over the λ grid (zeta.json).
    Zeta,
    /// η by every route and the F identity residual (eta.json).
    Eta,
    /// Heat and resolvent kernel tables (kernels_heat.csv, kernels_resolvent.csv).
    Kernels,
    /// Pluriharmonicity scan over Schottky parameters (scan.csv, scan.json).
    Scan,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Zeta => "zeta",
            Command::Eta => "eta",
            Command::Kernels => "kernels",
            Command::Scan => "scan",
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("--config is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut cfg = RawConfig::parse(&text)?.validate()?;
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        cfg.threads = n;
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let meta = Meta::new(cli.command.name(), &text, &cfg);
    let out = OutDir::create(&cli.out)?;
    match cli.command {
        Command::Spectrum => commands::spectrum(&cfg, &meta, &out),
        Command::Zeta => commands::zeta(&cfg, &meta, &out),
        Command::Eta => commands::eta(&cfg, &meta, &out),
        Command::Kernels => commands::kernels(&cfg, &meta, &out),
        Command::Scan => commands::scan(&cfg, &meta, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oddzeta {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}
