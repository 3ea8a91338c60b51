//! Atom-molecule observables: scattering length A0 from log-derivative
//! matching at the potential range R1, the low-energy cross-section
//! sigma0(k), and the positions a1^(n) of the three-body resonances
//! (where the semiclassical level count N0 crosses a half-integer and A0
//! diverges).

use crate::adiabatic::range_r1_scale;
use crate::error::{Error, Result};
use crate::heavy::n0_estimate;
use crate::specfun::EULER_GAMMA;
use crate::twobody::{p_wave_pole, ModelParams};
use std::f64::consts::PI;

/// A resonance position in the p-wave scattering area a1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePosition {
    pub n: u32,
    /// Exact inversion of the half-integer condition:
    /// a1 = 2 exp[(pi^2 / (2 beta)) (n + 1/2)^2].
    pub a1_exact: f64,
    /// Large-n order-of-magnitude form exp[(pi^2 / (2 beta)) n^2],
    /// reported alongside for comparison.
    pub a1_asymptotic: f64,
}

/// One point of a resonance scan over a1.
#[derive(Debug, Clone, Copy)]
pub struct ResonanceScanPoint {
    pub a1: f64,
    pub n0: f64,
    /// None when the grid point sits numerically on a pole.
    pub a_molecule: Option<f64>,
    /// True when a half-integer N0 crossing lies between this grid point
    /// and the previous one.
    pub pole_crossed: bool,
}

/// Summary of the atom-molecule observables at fixed parameters.
#[derive(Debug, Clone)]
pub struct ScatteringObservables {
    pub n0: f64,
    pub a_molecule: f64,
    /// (k, sigma0) samples.
    pub sigma_samples: Vec<(f64, f64)>,
    pub resonances: Vec<ResonancePosition>,
}

/// Low-energy atom-molecule cross-section
/// sigma0 = (pi^2 / k) / [pi^2/4 + ln^2(k A0 e^gamma / 2)].
pub fn cross_section(k: f64, a0_molecule: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain {
            context: "cross_section: k",
            value: k,
        });
    }
    if !(a0_molecule > 0.0) {
        return Err(Error::Domain {
            context: "cross_section: A0",
            value: a0_molecule,
        });
    }
    let l = (0.5 * k * a0_molecule * EULER_GAMMA.exp()).ln();
    Ok((PI * PI / k) / (0.25 * PI * PI + l * l))
}

/// The k r1 << 1 validity flag: callers should warn (not fail) above.
pub const K_VALIDITY_LIMIT: f64 = 0.1;

fn distance_to_half_integer(n0: f64) -> f64 {
    let frac = n0 - n0.floor();
    (frac - 0.5).abs()
}

/// Atom-molecule scattering length from matching the zero-energy
/// heavy-pair solution at R1: A0 = R1 exp[-(1/(2 beta)) pi N0 tan(pi N0)]
/// (tan = N0 / cot). Equals R1 exactly at integer N0 and diverges at
/// half-integer N0 — the three-body resonance.
pub fn atom_molecule_length(params: &ModelParams) -> Result<f64> {
    if params.is_resonant() {
        return Err(Error::Resonance {
            context: "atom_molecule_length",
        });
    }
    let n0 = n0_estimate(params)?;
    if distance_to_half_integer(n0) < 1e-9 {
        return Err(Error::AtomMoleculeResonance { n0 });
    }
    let r1 = range_r1_scale(params)?.closed_form;
    let exponent = -(1.0 / (2.0 * params.beta)) * PI * n0 * (PI * n0).tan();
    Ok(r1 * exponent.exp())
}

/// Resonance positions a1^(n): exact inversion of N0(a1) = n + 1/2 plus
/// the order-of-magnitude asymptotic form.
pub fn resonance_positions(params: &ModelParams, n_list: &[u32]) -> Vec<ResonancePosition> {
    let c = PI * PI / (2.0 * params.beta);
    n_list
        .iter()
        .map(|&n| ResonancePosition {
            n,
            a1_exact: 2.0 * (c * (n as f64 + 0.5).powi(2)).exp(),
            a1_asymptotic: (c * (n as f64).powi(2)).exp(),
        })
        .collect()
}

/// Tabulate N0 and A0 across an increasing a1 grid, flagging pole
/// crossings.
pub fn resonance_scan(
    params_base: &ModelParams,
    a1_grid: &[f64],
) -> Result<Vec<ResonanceScanPoint>> {
    if a1_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams {
            name: "a1_grid",
            message: "grid must be strictly increasing".into(),
        });
    }
    let mut out = Vec::with_capacity(a1_grid.len());
    let mut prev_half_count: Option<i64> = None;
    for &a1 in a1_grid {
        if !(a1 > 0.0) {
            return Err(Error::InvalidParams {
                name: "a1_grid",
                message: format!("a1 must be > 0, got {a1}"),
            });
        }
        let p = ModelParams::from_beta(
            params_base.beta,
            1.0 / a1,
            params_base.a0,
            params_base.r0,
            params_base.theta0,
        )?;
        let n0 = n0_estimate(&p)?;
        // number of half-integer crossings below this N0
        let half_count = (n0 + 0.5).floor() as i64;
        let pole_crossed = prev_half_count.is_some_and(|c| half_count != c);
        prev_half_count = Some(half_count);
        let a_molecule = atom_molecule_length(&p).ok();
        out.push(ResonanceScanPoint {
            a1,
            n0,
            a_molecule,
            pole_crossed,
        });
    }
    Ok(out)
}

/// Incident wavenumber from the total energy: (hbar k)^2 / M = E - eps1
/// gives k = sqrt(beta (E - eps1)) in library units.
pub fn wavenumber_from_energy(e_total: f64, params: &ModelParams) -> Result<f64> {
    let eps1 = p_wave_pole(params)?.epsilon1;
    if e_total <= eps1 {
        return Err(Error::Domain {
            context: "wavenumber_from_energy: E must exceed eps1",
            value: e_total,
        });
    }
    Ok((params.beta * (e_total - eps1)).sqrt())
}

/// Bundle the observables at fixed parameters: N0, A0, sigma0 on a
/// k-grid, and the first few resonance positions.
pub fn observables(
    params: &ModelParams,
    k_grid: &[f64],
    n_resonances: u32,
) -> Result<ScatteringObservables> {
    let n0 = n0_estimate(params)?;
    let a_molecule = atom_molecule_length(params)?;
    let mut sigma_samples = Vec::with_capacity(k_grid.len());
    for &k in k_grid {
        sigma_samples.push((k, cross_section(k, a_molecule)?));
    }
    let n_list: Vec<u32> = (1..=n_resonances).collect();
    Ok(ScatteringObservables {
        n0,
        a_molecule,
        sigma_samples,
        resonances: resonance_positions(params, &n_list),
    })
}
