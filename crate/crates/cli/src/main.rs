// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Reproduction runs for the common-bath Jaynes-Cummings system.

mod config;
mod csv;
mod error;
mod runs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Engine, ExperimentConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "jcbath",
    version,
    about = "Common-bath Jaynes-Cummings simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file of `section.key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides `run.output`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Engine to run; repeatable (overrides `run.engines`).
    #[arg(long, global = true, value_parser = parse_engine)]
    engine: Vec<Engine>,

    /// Drop the decay-channel interference terms.
    #[arg(long, global = true)]
    no_interference: bool,

    /// `section.key=value` override applied after the file; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Time evolution of the photon number and dressed populations.
    Decay,
    /// Trapping in the quasi-dark state of the uncoupled system.
    Quasidark,
    /// Driven steady-state transmission spectrum.
    Spectrum,
    /// Master equation against the exact and iteration oracles.
    OracleCompare,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    for assignment in &cli.overrides {
        cfg.apply_override(assignment)?;
    }
    if let Some(out) = &cli.out {
        cfg.output = out.clone();
    }
    if !cli.engine.is_empty() {
        cfg.engines = cli.engine.clone();
    }
    if cli.no_interference {
        cfg.interference = false;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    let cfg = resolve(cli)?;
    log::info!("resolved configuration: {}", cfg.echo());
    match cli.command {
        Command::Decay => runs::run_decay(&cfg),
        Command::Quasidark => runs::run_quasidark(&cfg),
        Command::Spectrum => runs::run_spectrum(&cfg),
        Command::OracleCompare => runs::run_oracle_compare(&cfg),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("jcbath: error: {}: {}", e.kind(), e);
            ExitCode::FAILURE
        }
    }
}
