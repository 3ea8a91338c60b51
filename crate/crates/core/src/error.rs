use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {context}: {value}")]
    Domain { context: &'static str, value: f64 },

    /// A T-matrix element is evaluated at (or numerically on top of) its pole.
    #[error("T-matrix pole in channel m = {channel} at kappa = {kappa}")]
    Pole { channel: i32, kappa: f64 },

    /// A bracketed search found no sign change, so no root exists in range.
    #[error("no root of {context} in ({lo}, {hi})")]
    NoRoot {
        context: &'static str,
        lo: f64,
        hi: f64,
    },

    /// The quantity is formally infinite at exact p-wave resonance (1/a1 = 0).
    #[error("{context} diverges at exact resonance (1/a1 = 0)")]
    Resonance { context: &'static str },

    /// No outer turning point v(R) = E exists beyond the given radius.
    #[error("no turning point: v(R) > E = {energy} everywhere beyond R = {r_lower}")]
    NoTurningPoint { energy: f64, r_lower: f64 },

    /// The integration grid cannot resolve the local de Broglie wavelength.
    #[error("grid too coarse at rho = {rho}: local wavelength spans {steps:.2} steps (need >= 8)")]
    GridTooCoarse { rho: f64, steps: f64 },

    /// The requested level lies outside the potential's validity range.
    #[error("level n = {n} not supported: turning point {r_n} exceeds validity range {r_max}")]
    LevelNotSupported { n: u32, r_n: f64, r_max: f64 },

    /// The bound-state count sits on a half-integer, where the
    /// atom-molecule scattering length diverges (a three-body resonance).
    #[error("atom-molecule resonance: N0 = {n0} is half-integer, A0 diverges")]
    AtomMoleculeResonance { n0: f64 },

    /// Too few levels for the requested fit.
    #[error("spectrum fit needs at least {need} levels, got {have}")]
    InsufficientLevels { need: usize, have: usize },

    /// An iterative solve ran out of iterations without meeting its tolerance.
    #[error("{context} did not converge after {iterations} iterations")]
    NonConvergence {
        context: &'static str,
        iterations: usize,
    },

    /// Invalid model parameters.
    #[error("invalid parameter {name}: {message}")]
    InvalidParams { name: &'static str, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
