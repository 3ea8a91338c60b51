//! Independent oracle for the branch equations: the determinant of the
//! coupled linear system for the light-particle partial-wave amplitudes,
//! truncated at |m| <= m_max, and its zeros in xi.
//!
//! Real-arithmetic formulation. Each raw matrix entry
//! `i pi T_m H^(1)_{m-m'}(i xi rho)` is a real number times an exact
//! power of -i: with H^(1)_n(ix) = (2/pi)(-i)^{n+1} K_{|n|}(x) the entry
//! reduces to `2 T_m (-i)^{m-m'} K_{|m-m'|}(xi rho)`. Rescaling the
//! amplitudes by exact quarter-turn phases (C_m^+ = i^m B_m^+,
//! C_m^- = (-i)^m B_m^-) renders both equation blocks real:
//!
//!   B_m^+- + (-1)^m 2 T_m sum_{m'} K_{|m-m'|}(xi rho) B_{m'}^-+ = 0,
//!
//! and the symmetric/antisymmetric combinations S = B^+ + B^-,
//! A = B^+ - B^- block-diagonalize the system into two real
//! (2 m_max + 1)-dimensional sectors.
//!
//! Sector-to-branch correspondence (established empirically by the
//! equivalence tests, not assumed): the antisymmetric sector's zeros are
//! the union of branch-I plus and branch-II minus roots; the symmetric
//! sector carries branch-I minus and branch-II plus.
//!
//! Channels with |m| >= 2 are far off resonance; they are modeled by the
//! hard-disk background T_m = (-1)^m I_m(kappa r0) / (2 K_m(kappa r0)),
//! which reproduces the low-energy scaling T_m ~ (kappa r0)^{2m} and lets
//! the truncation error be measured rather than asserted.

use crate::adiabatic::{default_xi_max, Branch, BranchSign, SCAN_POINTS};
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::roots::scan_roots;
use crate::specfun::{bessel_i_series, bessel_k, bessel_k_scaled_upto};
use crate::twobody::{inv_t0, inv_t1, ModelParams};
use std::f64::consts::FRAC_PI_2;

/// Exchange-symmetry sector of the truncated system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Symmetric,
    Antisymmetric,
    Full,
}

impl Sector {
    fn sign(self) -> f64 {
        match self {
            Sector::Symmetric => 1.0,
            Sector::Antisymmetric => -1.0,
            Sector::Full => unreachable!("Full sector handled by the caller"),
        }
    }

    /// The (branch, sign) pairs whose roots this sector's determinant
    /// zeros reproduce at m_max = 1 (empirical mapping, see module docs).
    pub fn branches(self) -> &'static [(Branch, BranchSign)] {
        match self {
            Sector::Antisymmetric => &[
                (Branch::I, BranchSign::Plus),
                (Branch::II, BranchSign::Minus),
            ],
            Sector::Symmetric => &[
                (Branch::I, BranchSign::Minus),
                (Branch::II, BranchSign::Plus),
            ],
            Sector::Full => &[
                (Branch::I, BranchSign::Plus),
                (Branch::I, BranchSign::Minus),
                (Branch::II, BranchSign::Plus),
                (Branch::II, BranchSign::Minus),
            ],
        }
    }
}

/// H_m^(1)(ix) decomposed into a positive real magnitude and an exact
/// phase counted in quarter turns (powers of -i):
/// H_m^(1)(ix) = magnitude * (-i)^quarter_turns.
pub fn hankel_imag_as_k(m: i32, x: f64) -> Result<(f64, u8)> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            context: "hankel_imag_as_k",
            value: x,
        });
    }
    let magnitude = (2.0 / std::f64::consts::PI) * bessel_k(m.unsigned_abs(), x)?;
    let quarter_turns = (m + 1).rem_euclid(4) as u8;
    Ok((magnitude, quarter_turns))
}

fn check_inputs(xi: f64, rho: f64, m_max: u32) -> Result<()> {
    if !(xi > 0.0) {
        return Err(Error::Domain {
            context: "truncated system: xi",
            value: xi,
        });
    }
    if !(rho > 0.0) {
        return Err(Error::Domain {
            context: "truncated system: rho",
            value: rho,
        });
    }
    if !(1..=6).contains(&m_max) {
        return Err(Error::Domain {
            context: "truncated system: m_max must lie in [1, 6]",
            value: m_max as f64,
        });
    }
    Ok(())
}

/// L_m = -1/(2 T_m): the regularized per-channel inverse amplitude. Real
/// on the imaginary axis for every channel; vanishes exactly at the
/// channel's two-body pole.
fn channel_inverse(m: i32, xi: f64, params: &ModelParams) -> f64 {
    match m.unsigned_abs() {
        0 => FRAC_PI_2 * inv_t0(xi, params).expect("xi > 0"),
        1 => FRAC_PI_2 * inv_t1(xi, params).expect("xi > 0"),
        am => {
            // hard-disk background channel
            let x = xi * params.r0;
            let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
            let k = bessel_k(am, x).expect("x > 0");
            let i = bessel_i_series(am, x);
            sign * k / i
        }
    }
}

fn k_table(m_max: u32, z: f64) -> Vec<f64> {
    let scaled = bessel_k_scaled_upto(2 * m_max, z).expect("z > 0");
    let damp = (-z).exp();
    scaled.into_iter().map(|k| k * damp).collect()
}

fn sector_matrix_scaled(
    xi: f64,
    rho: f64,
    params: &ModelParams,
    m_max: u32,
    sector_sign: f64,
) -> Vec<f64> {
    let dim = (2 * m_max + 1) as usize;
    let ks = k_table(m_max, xi * rho);
    let mut a = vec![0.0; dim * dim];
    for (row, m) in (-(m_max as i32)..=m_max as i32).enumerate() {
        let l_m = channel_inverse(m, xi, params);
        let parity = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        for (col, mp) in (-(m_max as i32)..=m_max as i32).enumerate() {
            let k = ks[(m - mp).unsigned_abs() as usize];
            let mut entry = -sector_sign * parity * k;
            if row == col {
                entry += l_m;
            }
            a[row * dim + col] = entry;
        }
    }
    a
}

/// Regularized sector determinant: every row of the raw sector matrix is
/// multiplied by its channel's L_m = -1/(2 T_m), which removes the
/// T-matrix poles without moving any zero. This is the function the root
/// scan uses; its zero set equals the branch-root union of the sector.
pub fn build_determinant_scaled(
    xi: f64,
    rho: f64,
    params: &ModelParams,
    m_max: u32,
    sector: Sector,
) -> Result<f64> {
    check_inputs(xi, rho, m_max)?;
    let dim = (2 * m_max + 1) as usize;
    match sector {
        Sector::Full => {
            let s = determinant(sector_matrix_scaled(xi, rho, params, m_max, 1.0), dim);
            let a = determinant(sector_matrix_scaled(xi, rho, params, m_max, -1.0), dim);
            Ok(s * a)
        }
        _ => Ok(determinant(
            sector_matrix_scaled(xi, rho, params, m_max, sector.sign()),
            dim,
        )),
    }
}

/// Raw sector determinant with the physical T-matrix prefactors; errors
/// if any retained channel sits on its two-body pole at this xi.
pub fn build_determinant(
    xi: f64,
    rho: f64,
    params: &ModelParams,
    m_max: u32,
    sector: Sector,
) -> Result<f64> {
    check_inputs(xi, rho, m_max)?;
    // detect poles through the physical channels
    for m in 0..=1i32.min(m_max as i32) {
        let inv = if m == 0 {
            inv_t0(xi, params)?
        } else {
            inv_t1(xi, params)?
        };
        if inv.abs() < 1e-12 {
            return Err(Error::Pole {
                channel: m,
                kappa: xi,
            });
        }
    }
    let scaled = build_determinant_scaled(xi, rho, params, m_max, sector)?;
    // undo the row rescaling: det = det_scaled / prod_m L_m (per sector)
    let mut product = 1.0;
    for m in -(m_max as i32)..=m_max as i32 {
        product *= channel_inverse(m, xi, params);
    }
    match sector {
        Sector::Full => Ok(scaled / (product * product)),
        _ => Ok(scaled / product),
    }
}

/// A determinant zero in xi at fixed rho.
#[derive(Debug, Clone, Copy)]
pub struct DetRoot {
    pub rho: f64,
    pub xi: f64,
    pub sector: Sector,
    pub m_max: u32,
    pub converged: bool,
    pub residual: f64,
}

/// Scan-and-bisect zeros of the (regularized) sector determinant over
/// the same xi window as `solve_branch`.
pub fn find_det_roots(
    rho: f64,
    params: &ModelParams,
    m_max: u32,
    sector: Sector,
) -> Result<Vec<DetRoot>> {
    check_inputs(1.0, rho, m_max)?;
    let hi = default_xi_max(rho);
    let f = |xi: f64| build_determinant_scaled(xi, rho, params, m_max, sector).unwrap();
    Ok(scan_roots(f, 1e-12, hi, SCAN_POINTS, 1e-13)
        .into_iter()
        .map(|r| DetRoot {
            rho,
            xi: r.x,
            sector,
            m_max,
            converged: r.converged,
            residual: r.residual,
        })
        .collect())
}

/// Tabulated sector determinant along xi, for diagnostics and the
/// detcheck CLI command.
#[derive(Debug, Clone)]
pub struct DeterminantGrid {
    pub rho: f64,
    pub m_max: u32,
    pub sector: Sector,
    pub xi_samples: Vec<(f64, f64)>,
}

impl DeterminantGrid {
    pub fn sample(
        rho: f64,
        params: &ModelParams,
        m_max: u32,
        sector: Sector,
        xi_lo: f64,
        xi_hi: f64,
        points: usize,
    ) -> Result<Self> {
        check_inputs(xi_lo, rho, m_max)?;
        let mut xi_samples = Vec::with_capacity(points);
        for i in 0..points {
            let xi = xi_lo * (xi_hi / xi_lo).powf(i as f64 / (points - 1) as f64);
            let det = build_determinant_scaled(xi, rho, params, m_max, sector)?;
            xi_samples.push((xi, det));
        }
        Ok(Self {
            rho,
            m_max,
            sector,
            xi_samples,
        })
    }
}
