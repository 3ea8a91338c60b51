//! `qc`: command-line front end for the quasicoulomb library.
//!
//! Subcommands: `potential`, `spectrum`, `scattering`, `detcheck`. Each
//! reads a JSON config (`--config`), writes CSV/JSON artifacts plus a
//! `manifest.json` with per-output checksums into `--out`, and exits
//! with 0 on success, 2 on configuration errors, 3 on numerical
//! failures. Precedence: CLI flags override config-file values. Logging
//! level comes from the `QC_LOG_LEVEL` env var (error/warn/info/debug).

mod commands;
mod config;
mod output;

use clap::{Args, Parser};
use std::path::PathBuf;
use std::process::ExitCode;

use config::OutputFormat;
use output::ManifestBuilder;

/// A failed run, split by exit code: configuration problems (2) vs
/// numerical or I/O failures while computing (3).
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Run(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Run(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Run(m) => m,
        }
    }
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for data files and manifest.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Table format; overrides the config-file `format` (default csv).
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Worker threads for grid fan-out (default: one per core). Output
    /// is deterministic regardless.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Parser)]
#[command(
    name = "qc",
    version,
    about = "Heavy-heavy-light three-body toolkit: adiabatic potentials, quasi-Coulomb spectra, atom-molecule resonances"
)]
enum Cli {
    /// Tabulate the adiabatic branch potentials and their asymptotics.
    Potential(Common),
    /// Bound spectrum of the heavy pair (radial solver and WKB chain).
    Spectrum(Common),
    /// Resonance scan: N0, atom-molecule scattering length, poles.
    Scattering(Common),
    /// Cross-check determinant zeros against the branch equations.
    Detcheck(Common),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (common, command): (&Common, fn(_, _, _) -> _) = match &cli {
        Cli::Potential(c) => (c, commands::cmd_potential as _),
        Cli::Spectrum(c) => (c, commands::cmd_spectrum as _),
        Cli::Scattering(c) => (c, commands::cmd_scattering as _),
        Cli::Detcheck(c) => (c, commands::cmd_detcheck as _),
    };
    if let Some(threads) = common.threads {
        if threads == 0 {
            return Err(CliError::Config("--threads must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let (config, config_bytes) = config::load(&common.config)?;
    let format = common.format.or(config.format).unwrap_or(OutputFormat::Csv);
    std::fs::create_dir_all(&common.out)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", common.out.display())))?;
    let mut manifest = ManifestBuilder::new(&common.out, &config_bytes);
    command(&config, format, &mut manifest)?;
    // written only now, so a manifest certifies a completed run
    manifest.finish()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QC_LOG_LEVEL", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
