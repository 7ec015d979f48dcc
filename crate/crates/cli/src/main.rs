//! `auger`: geometry to Auger and X-ray absorption spectra, stage by stage.

mod config;
mod manifest;
mod stages;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};

use config::Overrides;
use stages::{Runner, Stage};

#[derive(Debug, Parser)]
#[command(name = "auger", version, about = "Core-level spectra from a molecular geometry")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Stage to run, as an alternative to the subcommand.
    #[arg(long, value_enum, env = "AUGER_STAGE")]
    stage: Option<Stage>,
    /// Run configuration (JSON).
    #[arg(long, global = true, env = "AUGER_CONFIG")]
    config: Option<PathBuf>,
    /// Replaces the configured seed.
    #[arg(long, global = true, env = "AUGER_SEED")]
    seed: Option<u64>,
    /// Replaces the configured output directory.
    #[arg(long, global = true, env = "AUGER_OUT")]
    out: Option<PathBuf>,
    /// Replaces the configured atomic-integral table.
    #[arg(long, global = true, env = "AUGER_TABLE")]
    table: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long, global = true, env = "AUGER_SVG")]
    svg: bool,
    /// Address for the external-proposer endpoint.
    #[arg(long, global = true, env = "AUGER_LISTEN")]
    listen: Option<String>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Hartree–Fock in STO-3G.
    Scf,
    /// Ground-state circuit (VQE, annealer or external proposer).
    Ground,
    /// IP, DIP and (with XAS) EE subspace matrices and Auger transition densities.
    Qsceom,
    /// Auger channel table and broadened spectrum.
    Auger,
    /// Core-excitation sticks and broadened spectrum.
    Xas,
    /// Exact sector energies (and exact-state Auger spectrum) for regression.
    FciRef,
    /// Measurement counts for the Auger workflow.
    Workload,
    /// scf, ground, qsceom, then auger / xas as configured, then workload.
    All,
}

impl From<Command> for Stage {
    fn from(c: Command) -> Stage {
        match c {
            Command::Scf => Stage::Scf,
            Command::Ground => Stage::Ground,
            Command::Qsceom => Stage::Qsceom,
            Command::Auger => Stage::Auger,
            Command::Xas => Stage::Xas,
            Command::FciRef => Stage::FciRef,
            Command::Workload => Stage::Workload,
            Command::All => Stage::All,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let stage = match (cli.command, cli.stage) {
        (Some(c), None) => Stage::from(c),
        (None, Some(s)) => s,
        (Some(c), Some(s)) if Stage::from(c) == s => s,
        (Some(_), Some(_)) => bail!("the subcommand and --stage name different stages"),
        (None, None) => bail!("name a stage: `auger <stage> --config FILE` or `--stage <stage>`"),
    };
    let Some(path) = cli.config else {
        bail!("--config FILE (or AUGER_CONFIG) is required");
    };
    let overrides = Overrides { seed: cli.seed, out: cli.out, table: cli.table, svg: cli.svg, listen: cli.listen };
    let loaded = config::load(&path, &overrides)?;
    Runner::new(loaded)?.run(stage)
}
