//! Two-dimensional heavy-light effective-range scattering: inverse
//! T-matrix functions on the imaginary momentum axis, the p-wave
//! bound-state pole, and the model parameters shared by every module.
//!
//! Units: hbar = 1, mu = 1, r1 = 1. Lengths are in units of r1, the
//! p-wave scattering area a1 in r1^2, energies in hbar^2/(mu r1^2).
//!
//! On the imaginary axis, ln(i kappa) = ln kappa + i pi/2 makes the
//! imaginary part of cot(delta_m) cancel the -i of the T-matrix
//! denominator identically, so `inv_t0` / `inv_t1` return the real
//! remainder directly.

use crate::error::{Error, Result};
use crate::roots::bisect;
use crate::specfun::EULER_GAMMA;
use std::f64::consts::{FRAC_2_PI, PI};

/// Dimensionless model parameters; the single source of truth for the
/// mass ratio and the two-body effective-range data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Light/heavy mass ratio m/M.
    pub alpha: f64,
    /// M/mu, derived from alpha.
    pub beta: f64,
    /// 1/a1 in units 1/r1^2; exactly zero at the p-wave resonance.
    pub inv_a1: f64,
    /// s-wave scattering length in units r1.
    pub a0: f64,
    /// Potential range in units r1 (validity checks only).
    pub r0: f64,
    /// Short-range WKB phase, in [-pi, pi].
    pub theta0: f64,
}

/// Lower bound on r0 in units r1: r1 <= (1/2) e^gamma r0.
pub fn r0_lower_bound() -> f64 {
    2.0 * (-EULER_GAMMA).exp()
}

impl ModelParams {
    /// Build from the mass ratio alpha = m/M. With mu = 2mM/(m+2M) the
    /// heavy-to-reduced ratio is beta = M/mu = (2 + alpha)/(2 alpha).
    pub fn new(alpha: f64, inv_a1: f64, a0: f64, r0: f64, theta0: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParams {
                name: "alpha",
                message: format!("must be > 0, got {alpha}"),
            });
        }
        let beta = (2.0 + alpha) / (2.0 * alpha);
        Self::validated(alpha, beta, inv_a1, a0, r0, theta0)
    }

    /// Build from beta = M/mu directly (beta > 1/2).
    pub fn from_beta(beta: f64, inv_a1: f64, a0: f64, r0: f64, theta0: f64) -> Result<Self> {
        if !(beta > 0.5) {
            return Err(Error::InvalidParams {
                name: "beta",
                message: format!("must be > 1/2, got {beta}"),
            });
        }
        let alpha = 2.0 / (2.0 * beta - 1.0);
        Self::validated(alpha, beta, inv_a1, a0, r0, theta0)
    }

    fn validated(
        alpha: f64,
        beta: f64,
        inv_a1: f64,
        a0: f64,
        r0: f64,
        theta0: f64,
    ) -> Result<Self> {
        if !(inv_a1 >= 0.0) {
            return Err(Error::InvalidParams {
                name: "inv_a1",
                message: format!("must be >= 0, got {inv_a1}"),
            });
        }
        if !(a0 > 0.0) {
            return Err(Error::InvalidParams {
                name: "a0",
                message: format!("must be > 0, got {a0}"),
            });
        }
        if !(r0 >= r0_lower_bound()) {
            return Err(Error::InvalidParams {
                name: "r0",
                message: format!(
                    "effective-range bound requires r0 >= 2 e^-gamma = {:.6}, got {r0}",
                    r0_lower_bound()
                ),
            });
        }
        if !(-PI..=PI).contains(&theta0) {
            return Err(Error::InvalidParams {
                name: "theta0",
                message: format!("must lie in [-pi, pi], got {theta0}"),
            });
        }
        Ok(Self {
            alpha,
            beta,
            inv_a1,
            a0,
            r0,
            theta0,
        })
    }

    /// Exact p-wave resonance, 1/a1 = 0.
    pub fn is_resonant(&self) -> bool {
        self.inv_a1 == 0.0
    }

    /// a1 in units r1^2; infinite at resonance.
    pub fn a1(&self) -> f64 {
        if self.inv_a1 == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.inv_a1
        }
    }

    /// Near-resonance regime flag, a1 >> r1^2.
    pub fn near_resonance(&self) -> bool {
        self.inv_a1 < 0.1
    }
}

/// The p-wave bound state of the heavy-light pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PWaveBoundState {
    /// Pole position on the imaginary momentum axis, units 1/r1.
    pub kappa1: f64,
    /// Binding energy -kappa1^2/2, units hbar^2/(mu r1^2).
    pub epsilon1: f64,
}

fn check_kappa(kappa: f64, context: &'static str) -> Result<()> {
    if !(kappa > 0.0) {
        return Err(Error::Domain {
            context,
            value: kappa,
        });
    }
    Ok(())
}

/// Real remainder of cot[delta_0(i kappa)] - i:
/// (2/pi) [gamma + ln(kappa a0 / 2)].
pub fn inv_t0(kappa: f64, params: &ModelParams) -> Result<f64> {
    check_kappa(kappa, "inv_t0")?;
    Ok(FRAC_2_PI * (EULER_GAMMA + (0.5 * kappa * params.a0).ln()))
}

/// Real remainder of cot[delta_1(i kappa)] - i:
/// (2/pi) [1/(a1 kappa^2) + ln kappa] in units r1 = 1.
pub fn inv_t1(kappa: f64, params: &ModelParams) -> Result<f64> {
    check_kappa(kappa, "inv_t1")?;
    Ok(FRAC_2_PI * (params.inv_a1 / (kappa * kappa) + kappa.ln()))
}

const POLE_EPS: f64 = 1e-12;

/// On-shell T-matrix element T_m(i kappa) = -(1/pi) / inv_t_m(kappa) as a
/// real number; T_{-1} = T_{+1}. Errors at the bound-state pole.
pub fn t_matrix(m: i32, kappa: f64, params: &ModelParams) -> Result<f64> {
    check_kappa(kappa, "t_matrix")?;
    let inv = match m {
        0 => inv_t0(kappa, params)?,
        1 | -1 => inv_t1(kappa, params)?,
        _ => {
            return Err(Error::Domain {
                context: "t_matrix: order must be 0 or +-1",
                value: m as f64,
            })
        }
    };
    if inv.abs() < POLE_EPS {
        return Err(Error::Pole { channel: m, kappa });
    }
    Ok(-1.0 / (PI * inv))
}

/// Binding energy of the p-wave state from the effective-range asymptotic
/// form: epsilon_1 = -1/(a1 ln(a1/2)), valid for a1 >> 2.
pub fn epsilon1_asymptotic(params: &ModelParams) -> Result<f64> {
    if params.is_resonant() {
        return Err(Error::Resonance {
            context: "epsilon1_asymptotic",
        });
    }
    let a1 = params.a1();
    Ok(-1.0 / (a1 * (0.5 * a1).ln()))
}

/// Locate the positive pole kappa_1 of T_1, i.e. the root of
/// inv_t1(kappa) = 0 with kappa below the minimum of the inverse
/// T-matrix. The function 1/(a1 kappa^2) + ln kappa dips below zero only
/// for a1 > 2e; its minimum sits at kappa* = sqrt(2/a1), and the physical
/// bound-state pole is the unique root left of that minimum (the second
/// zero near kappa ~ 1 lies outside the validity of the effective-range
/// expansion).
pub fn p_wave_pole(params: &ModelParams) -> Result<PWaveBoundState> {
    if params.is_resonant() {
        return Err(Error::NoRoot {
            context: "p_wave_pole: exact resonance has no bound state",
            lo: 0.0,
            hi: 1.0,
        });
    }
    let kappa_star = (2.0 * params.inv_a1).sqrt();
    let f = |k: f64| params.inv_a1 / (k * k) + k.ln();
    if f(kappa_star) >= 0.0 {
        return Err(Error::NoRoot {
            context: "p_wave_pole: a1 too small for a bound state",
            lo: 0.0,
            hi: kappa_star,
        });
    }
    let kappa1 = bisect(f, 1e-12, kappa_star, 1e-14, 300)?;
    Ok(PWaveBoundState {
        kappa1,
        epsilon1: -0.5 * kappa1 * kappa1,
    })
}
