//! Run configuration: a single JSON file with a `params` block and one
//! optional block per subcommand. Unknown keys are rejected so stale
//! configs fail loudly. CLI flags (`--format`, `--threads`) override
//! file values.

use quasicoulomb::ModelParams;
use serde::Deserialize;

use crate::CliError;

/// Output format for the data tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsConfig,
    /// Default output format; the `--format` flag takes precedence.
    #[serde(default)]
    pub format: Option<OutputFormat>,
    #[serde(default)]
    pub potential: Option<PotentialConfig>,
    #[serde(default)]
    pub spectrum: Option<SpectrumConfig>,
    #[serde(default)]
    pub scattering: Option<ScatteringConfig>,
    #[serde(default)]
    pub detcheck: Option<DetcheckConfig>,
}

/// Physical parameters. Exactly one of `alpha` (light/heavy mass ratio)
/// or `beta` (heavy-to-reduced mass ratio) must be given.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    pub inv_a1: f64,
    pub a0: f64,
    pub r0: f64,
    #[serde(default)]
    pub theta0: f64,
}

impl ParamsConfig {
    pub fn to_model(&self) -> Result<ModelParams, CliError> {
        let built = match (self.alpha, self.beta) {
            (Some(alpha), None) => {
                ModelParams::new(alpha, self.inv_a1, self.a0, self.r0, self.theta0)
            }
            (None, Some(beta)) => {
                ModelParams::from_beta(beta, self.inv_a1, self.a0, self.r0, self.theta0)
            }
            _ => {
                return Err(CliError::Config(
                    "params: give exactly one of `alpha` or `beta`".into(),
                ))
            }
        };
        built.map_err(|e| CliError::Config(format!("params: {e}")))
    }
}

/// Adiabatic-curve tabulation grid (log-uniform in rho).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub rho_min: f64,
    pub rho_max: f64,
    pub points_per_decade: usize,
}

/// Heavy-pair bound-spectrum run on the clamped long-range potential.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default = "default_n_min")]
    pub n_min: u32,
    pub n_max: u32,
    pub rho_min: f64,
    pub rho_max: f64,
    pub points: usize,
    /// |v| clamp applied around the rho = 1 pole of the raw asymptotic
    /// potential before handing it to the radial solver.
    pub cap: f64,
}

fn default_n_min() -> u32 {
    1
}

/// Resonance scan over a log-uniform a1 grid.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatteringConfig {
    pub a1_min: f64,
    pub a1_max: f64,
    pub points: usize,
}

/// Branch-equation vs truncated-determinant cross-check.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetcheckConfig {
    pub rho_values: Vec<f64>,
    pub m_max: u32,
    /// Equivalence threshold on the relative root mismatch.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_tolerance() -> f64 {
    1e-8
}

/// Parse and hash the raw config file.
pub fn load(path: &std::path::Path) -> Result<(RunConfig, Vec<u8>), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let config: RunConfig = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))?;
    Ok((config, bytes))
}
