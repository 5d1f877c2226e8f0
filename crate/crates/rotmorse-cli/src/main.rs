use clap::{Args, Parser, Subcommand};
use rotmorse_cli::commands;
use rotmorse_cli::config::{OutputFormat, RunConfig};
use std::path::PathBuf;

/// Rotating-Morse coherent-state dynamics.
#[derive(Parser)]
#[command(name = "rotmorse", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid serialization format: csv or bin (overrides the config).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Channel constants per j: equilibrium shift, well depth, expansion
    /// coefficients, ladder size.
    Channel(Common),
    /// Coherent-state density snapshots with an energy/period sidecar.
    Evolve(Common),
    /// Wigner phase-space grids with a normalization/negativity sidecar.
    Wigner(Common),
    /// Rotation-angle estimation by overlap maximization against j = 0.
    Rotate(Common),
    /// Oracle and property suite; nonzero exit when a check fails.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Test hook: shift each analytic level by this amount times
        /// (n + 1/2) before the spectrum comparison.
        #[arg(long, default_value_t = 0.0)]
        perturb_energy: f64,
    },
}

fn load(common: &Common) -> Result<RunConfig, rotmorse_cli::CliError> {
    let mut cfg = RunConfig::load(common.config.as_deref())?;
    if let Some(out) = &common.out {
        cfg.out_dir = out.clone();
    }
    if let Some(fmt) = &common.format {
        cfg.format = fmt.parse::<OutputFormat>()?;
    }
    Ok(cfg)
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Channel(c) => load(c).and_then(|cfg| commands::run_channel(&cfg)),
        Cmd::Evolve(c) => load(c).and_then(|cfg| commands::run_evolve(&cfg)),
        Cmd::Wigner(c) => load(c).and_then(|cfg| commands::run_wigner(&cfg)),
        Cmd::Rotate(c) => load(c).and_then(|cfg| commands::run_rotate(&cfg)),
        Cmd::Validate {
            common,
            perturb_energy,
        } => load(common).and_then(|cfg| commands::run_validate(&cfg, *perturb_energy)),
    };
    if let Err(e) = result {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
