//! Effective potentials for the heavy-pair dynamics: closed-form
//! asymptotics, tabulated branch curves, and the wrappers (truncation,
//! clamping) the spectrum solvers need.

use crate::adiabatic::{solve_branch, v_asympt, v_i0_asympt, v_ii0_asympt, Branch, BranchSign};
use crate::error::{Error, Result};
use crate::twobody::ModelParams;

/// A potential v(rho) in units hbar^2/(mu r1^2).
pub trait Potential {
    /// Raw value of the potential at separation rho > 0.
    fn value(&self, rho: f64) -> f64;
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, rho: f64) -> f64 {
        (**self).value(rho)
    }
}

/// The common long-range limit v = -1/(rho^2 ln rho). Below rho = 1 the
/// raw formula is repulsive and crosses a pole at rho = 1; spectrum runs
/// wrap this in [`Clamped`].
#[derive(Debug, Clone, Copy)]
pub struct AsymptV;

impl Potential for AsymptV {
    fn value(&self, rho: f64) -> f64 {
        -1.0 / (rho * rho * rho.ln())
    }
}

/// Branch-I resonant asymptotic potential (raw formula).
#[derive(Debug, Clone, Copy)]
pub struct AsymptI0;

impl Potential for AsymptI0 {
    fn value(&self, rho: f64) -> f64 {
        v_i0_asympt(rho).unwrap_or(f64::NAN)
    }
}

/// Branch-II resonant asymptotic potential (raw formula).
#[derive(Debug, Clone, Copy)]
pub struct AsymptII0;

impl Potential for AsymptII0 {
    fn value(&self, rho: f64) -> f64 {
        v_ii0_asympt(rho).unwrap_or(f64::NAN)
    }
}

/// Square well: v = -depth for rho < radius, zero outside. Test and
/// calibration potential.
#[derive(Debug, Clone, Copy)]
pub struct SquareWell {
    pub depth: f64,
    pub radius: f64,
}

impl Potential for SquareWell {
    fn value(&self, rho: f64) -> f64 {
        if rho < self.radius {
            -self.depth
        } else if rho == self.radius {
            // midpoint convention at the jump: keeps grid-sampled
            // integrators second-order when a grid point lands on the edge
            -0.5 * self.depth
        } else {
            0.0
        }
    }
}

/// Truncate `inner` to zero beyond `r_cut` (the off-resonance validity
/// range R1).
#[derive(Debug, Clone, Copy)]
pub struct Truncated<P> {
    pub inner: P,
    pub r_cut: f64,
}

impl<P: Potential> Potential for Truncated<P> {
    fn value(&self, rho: f64) -> f64 {
        if rho <= self.r_cut {
            self.inner.value(rho)
        } else {
            0.0
        }
    }
}

/// Clamp `inner` to [-cap, cap]; regularizes the rho = 1 pole of the
/// asymptotic form without touching the long-range tail.
#[derive(Debug, Clone, Copy)]
pub struct Clamped<P> {
    pub inner: P,
    pub cap: f64,
}

impl<P: Potential> Potential for Clamped<P> {
    fn value(&self, rho: f64) -> f64 {
        self.inner.value(rho).clamp(-self.cap, self.cap)
    }
}

/// Which curve a [`PotentialCurve`] tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    BranchIPlus,
    BranchIMinus,
    BranchIIPlus,
    BranchIIMinus,
    AsymptI0,
    AsymptII0,
    AsymptV,
}

impl CurveKind {
    pub const ALL: [CurveKind; 7] = [
        CurveKind::BranchIPlus,
        CurveKind::BranchIMinus,
        CurveKind::BranchIIPlus,
        CurveKind::BranchIIMinus,
        CurveKind::AsymptI0,
        CurveKind::AsymptII0,
        CurveKind::AsymptV,
    ];

    pub fn branch_sign(self) -> Option<(Branch, BranchSign)> {
        match self {
            CurveKind::BranchIPlus => Some((Branch::I, BranchSign::Plus)),
            CurveKind::BranchIMinus => Some((Branch::I, BranchSign::Minus)),
            CurveKind::BranchIIPlus => Some((Branch::II, BranchSign::Plus)),
            CurveKind::BranchIIMinus => Some((Branch::II, BranchSign::Minus)),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CurveKind::BranchIPlus => "v_branchI_plus",
            CurveKind::BranchIMinus => "v_branchI_minus",
            CurveKind::BranchIIPlus => "v_branchII_plus",
            CurveKind::BranchIIMinus => "v_branchII_minus",
            CurveKind::AsymptI0 => "v_I0_asympt",
            CurveKind::AsymptII0 => "v_II0_asympt",
            CurveKind::AsymptV => "v_asympt",
        }
    }
}

/// Log-uniform tabulation grid.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub rho_min: f64,
    pub rho_max: f64,
    pub points_per_decade: usize,
}

impl GridSpec {
    pub fn new(rho_min: f64, rho_max: f64, points_per_decade: usize) -> Result<Self> {
        if !(rho_min > 0.0 && rho_max > rho_min && points_per_decade >= 2) {
            return Err(Error::InvalidParams {
                name: "grid",
                message: format!(
                    "need 0 < rho_min < rho_max and >= 2 points/decade, got [{rho_min}, {rho_max}] x {points_per_decade}"
                ),
            });
        }
        Ok(Self {
            rho_min,
            rho_max,
            points_per_decade,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        let decades = (self.rho_max / self.rho_min).log10();
        let n = ((decades * self.points_per_decade as f64).ceil() as usize).max(2);
        (0..=n)
            .map(|i| self.rho_min * 10f64.powf(decades * i as f64 / n as f64))
            .collect()
    }
}

/// Roots with xi above this value sit in the kappa r1 ~ 1 region where
/// the effective-range expansion no longer describes a physical light
/// state; the curve tabulator ignores them.
pub const CURVE_XI_MAX: f64 = 0.5;

/// Tabulated effective potential with the parameters it was built from.
#[derive(Debug, Clone)]
pub struct PotentialCurve {
    /// (rho, v) pairs, rho strictly increasing.
    pub samples: Vec<(f64, f64)>,
    pub kind: CurveKind,
    pub params_snapshot: ModelParams,
}

impl PotentialCurve {
    /// Tabulate `kind` on `grid`. Branch curves solve the transcendental
    /// equation per grid point and keep the deepest physical root
    /// (largest xi below [`CURVE_XI_MAX`]); grid points with no root or
    /// outside an asymptotic form's validity region are skipped.
    pub fn tabulate(kind: CurveKind, params: &ModelParams, grid: &GridSpec) -> Result<Self> {
        let mut samples = Vec::new();
        for rho in grid.points() {
            let v = match kind {
                CurveKind::AsymptV => v_asympt(rho).ok(),
                CurveKind::AsymptI0 => v_i0_asympt(rho).ok(),
                CurveKind::AsymptII0 => v_ii0_asympt(rho).ok(),
                _ => {
                    let (branch, sign) = kind.branch_sign().unwrap();
                    solve_branch(branch, sign, rho, params, None)?
                        .into_iter()
                        .filter(|r| r.converged && r.xi < CURVE_XI_MAX)
                        .map(|r| -0.5 * r.xi * r.xi)
                        .fold(None, |acc: Option<f64>, v| {
                            Some(acc.map_or(v, |a| a.min(v)))
                        })
                }
            };
            if let Some(v) = v {
                samples.push((rho, v));
            }
        }
        Ok(Self {
            samples,
            kind,
            params_snapshot: *params,
        })
    }

    pub fn rho_range(&self) -> Option<(f64, f64)> {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => Some((a.0, b.0)),
            _ => None,
        }
    }
}

impl Potential for PotentialCurve {
    /// Linear interpolation in ln rho; clamps to the end samples outside
    /// the tabulated range.
    fn value(&self, rho: f64) -> f64 {
        let s = &self.samples;
        if s.is_empty() {
            return f64::NAN;
        }
        if rho <= s[0].0 {
            return s[0].1;
        }
        if rho >= s[s.len() - 1].0 {
            return s[s.len() - 1].1;
        }
        let idx = s.partition_point(|&(r, _)| r < rho);
        let (r0, v0) = s[idx - 1];
        let (r1, v1) = s[idx];
        let t = (rho / r0).ln() / (r1 / r0).ln();
        v0 + t * (v1 - v0)
    }
}
