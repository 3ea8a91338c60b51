//! Bound-state spectrum of the heavy pair in an effective potential:
//! WKB phase and quantization, plus an independent Numerov ODE solver.
//!
//! The radial equation chi'' + chi'/rho + beta (E - v(rho)) chi = 0 is
//! integrated in the log variable s = ln rho, where w(s) = chi(e^s)
//! satisfies the first-derivative-free form
//! `w'' + Q(s) w = 0` with `Q = beta rho^2 (E - v(rho))`,
//! ideal for the three-point Numerov stencil on a uniform s-grid. The
//! reported wavefunction is u = chi sqrt(rho) = w e^{s/2}; node counts
//! and end-point signs are unaffected by the positive factor.

use crate::error::{Error, Result};
use crate::potential::{Potential, PotentialCurve};
use crate::quad::adaptive_simpson;
use crate::twobody::ModelParams;
use std::f64::consts::{FRAC_PI_4, PI};

/// Which solver produced a [`BoundSpectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    WkbClosed,
    WkbQuadrature,
    Numerov,
}

/// One bound level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    /// 1-based quantum number; level n carries n - 1 radial nodes.
    pub n: u32,
    /// Energy in units hbar^2/(mu r1^2), strictly negative.
    pub energy: f64,
    /// Outer classical turning point v(R) = E (well edge for
    /// discontinuous wells).
    pub outer_turning_point: f64,
}

/// Least-squares fit of ln(n^2 |E_n|) = ln E0 - slope * n^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumFit {
    pub e0_fit: f64,
    pub slope_fit: f64,
    pub r_squared: f64,
}

/// An ordered set of bound levels with optional model fit.
#[derive(Debug, Clone)]
pub struct BoundSpectrum {
    pub method: SpectrumMethod,
    pub levels: Vec<Level>,
    pub fit: Option<SpectrumFit>,
}

/// Raw output of a single outward Numerov integration.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    /// Log-spaced rho samples.
    pub grid: Vec<f64>,
    /// u = chi sqrt(rho), arbitrary overall normalization.
    pub u_values: Vec<f64>,
    /// Interior sign changes of u (endpoints excluded).
    pub node_count: usize,
    pub energy: f64,
}

/// Inner boundary condition of the Numerov integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerBc {
    /// u(rho_min) = 0: a hard wall standing in for the short-range
    /// physics (the Numerov counterpart of theta0).
    HardWall,
    /// Start on the regular solution chi ~ 1 - Q/4 + Q^2/64 (the J0/I0
    /// small-argument series in Q = beta rho^2 (E - v)); needed when the
    /// physical potential genuinely extends below rho_min.
    Regular,
}

/// Grid and boundary choices for the Numerov solvers.
#[derive(Debug, Clone, Copy)]
pub struct NumerovConfig {
    pub rho_min: f64,
    pub rho_max: f64,
    pub points: usize,
    pub inner_bc: InnerBc,
}

impl NumerovConfig {
    pub fn new(rho_min: f64, rho_max: f64, points: usize, inner_bc: InnerBc) -> Result<Self> {
        if !(rho_min >= 0.1) {
            return Err(Error::InvalidParams {
                name: "rho_min",
                message: format!("inner wall must sit at rho >= 0.1, got {rho_min}"),
            });
        }
        if !(rho_max > rho_min) || points < 16 {
            return Err(Error::InvalidParams {
                name: "numerov_grid",
                message: format!("need rho_max > rho_min and >= 16 points, got [{rho_min}, {rho_max}] x {points}"),
            });
        }
        Ok(Self {
            rho_min,
            rho_max,
            points,
            inner_bc,
        })
    }
}

/// Outer classical turning point: smallest R >= r_lower with v(R) = E,
/// approached from the classically allowed side. For discontinuous wells
/// the bisection converges onto the jump radius.
pub fn turning_point<P: Potential>(potential: &P, e: f64, r_lower: f64) -> Result<f64> {
    if potential.value(r_lower) >= e {
        // already at (or beyond) the turning point
        return Ok(r_lower);
    }
    let mut lo = r_lower;
    let mut hi = r_lower;
    for _ in 0..2000 {
        hi *= 1.02;
        if potential.value(hi) >= e {
            // bisect v(R) - E on [lo, hi]
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if potential.value(mid) >= e {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if (hi - lo) <= 1e-12 * hi {
                    break;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        lo = hi;
    }
    Err(Error::NoTurningPoint { energy: e, r_lower })
}

/// Accumulated semiclassical phase from `r_lower` out to the turning
/// point R_E: integral of sqrt(beta (E - v)) dR plus the short-range
/// offset theta_e. The square-root endpoint is regularized by the
/// substitution R = R_E - t^2.
pub fn wkb_phase_quadrature<P: Potential>(
    potential: &P,
    beta: f64,
    e: f64,
    r_lower: f64,
    theta_e: f64,
) -> Result<f64> {
    if e > 0.0 {
        return Err(Error::Domain {
            context: "wkb_phase_quadrature: E must be <= 0",
            value: e,
        });
    }
    if potential.value(r_lower) > e {
        return Err(Error::Domain {
            context: "wkb_phase_quadrature: v(r_lower) must not exceed E",
            value: r_lower,
        });
    }
    let r_e = turning_point(potential, e, r_lower)?;
    if r_e <= r_lower {
        return Ok(theta_e);
    }
    let t_max = (r_e - r_lower).sqrt();
    let integrand = |t: f64| {
        let r = r_e - t * t;
        2.0 * t * (beta * (e - potential.value(r)).max(0.0)).sqrt()
    };
    Ok(adaptive_simpson(&integrand, 0.0, t_max, 1e-8) + theta_e)
}

/// Closed-form phase for the common long-range tail v = -1/(rho^2 ln rho)
/// in the shallow-energy limit: 2 sqrt(beta) [sqrt(ln R_E) - sqrt(ln R)]
/// + theta0.
pub fn wkb_phase_closed(r: f64, r_e: f64, beta: f64, theta0: f64) -> Result<f64> {
    if !(r > 1.0) {
        return Err(Error::Domain {
            context: "wkb_phase_closed: requires R > 1",
            value: r,
        });
    }
    if !(r_e >= r) {
        return Err(Error::Domain {
            context: "wkb_phase_closed: requires R_E >= R",
            value: r_e,
        });
    }
    Ok(2.0 * beta.sqrt() * (r_e.ln().sqrt() - r.ln().sqrt()) + theta0)
}

/// Potential handed to the WKB spectrum solver.
pub enum WkbPotentialKind<'a> {
    /// The closed long-range form; quantization inverts analytically to
    /// R_n = exp[((pi n - theta0) / (2 sqrt(beta)))^2].
    AsymptV,
    /// A tabulated curve; R_n solves phi(1, R_n) = pi n numerically.
    Curve(&'a PotentialCurve),
}

fn off_resonance_range(params: &ModelParams) -> Option<f64> {
    if params.is_resonant() {
        None
    } else {
        crate::adiabatic::range_r1_scale(params)
            .ok()
            .map(|r| r.closed_form)
    }
}

/// WKB spectrum with the quantization rule phi(r1, R_n) = pi n and the
/// energy connection E_n = v(R_n).
pub fn wkb_spectrum(
    params: &ModelParams,
    n_min: u32,
    n_max: u32,
    kind: WkbPotentialKind<'_>,
) -> Result<BoundSpectrum> {
    if !(1 <= n_min && n_min <= n_max) {
        return Err(Error::InvalidParams {
            name: "n_range",
            message: format!("need 1 <= n_min <= n_max, got [{n_min}, {n_max}]"),
        });
    }
    let beta = params.beta;
    let theta0 = params.theta0;
    let r1_cap = off_resonance_range(params);
    let mut levels = Vec::new();
    let method;
    match kind {
        WkbPotentialKind::AsymptV => {
            method = SpectrumMethod::WkbClosed;
            for n in n_min..=n_max {
                let sqrt_ln = (PI * n as f64 - theta0) / (2.0 * beta.sqrt());
                if sqrt_ln <= 0.0 {
                    return Err(Error::InvalidParams {
                        name: "theta0",
                        message: format!("phase offset leaves no level at n = {n}"),
                    });
                }
                let r_n = (sqrt_ln * sqrt_ln).exp();
                if let Some(r1) = r1_cap {
                    if r_n > r1 {
                        return Err(Error::LevelNotSupported { n, r_n, r_max: r1 });
                    }
                }
                levels.push(Level {
                    n,
                    energy: crate::adiabatic::v_asympt(r_n)?,
                    outer_turning_point: r_n,
                });
            }
        }
        WkbPotentialKind::Curve(curve) => {
            method = SpectrumMethod::WkbQuadrature;
            let (r_lo_tab, r_hi_tab) = curve.rho_range().ok_or(Error::InvalidParams {
                name: "curve",
                message: "empty potential curve".into(),
            })?;
            let r_hi = r1_cap.map_or(r_hi_tab, |r1| r1.min(r_hi_tab));
            let r_lo = r_lo_tab.max(1.0 + 1e-9);
            // phase accumulated from 1 out to R with E = v(R); monotone in R
            let phase = |r: f64| -> f64 {
                let e = curve.value(r).min(0.0);
                let t_max = (r - 1.0).sqrt();
                let integrand = |t: f64| {
                    let rp = r - t * t;
                    2.0 * t * (beta * (e - curve.value(rp)).max(0.0)).sqrt()
                };
                adaptive_simpson(&integrand, 0.0, t_max, 1e-8) + theta0
            };
            for n in n_min..=n_max {
                let target = PI * n as f64;
                if phase(r_hi) < target {
                    return Err(Error::LevelNotSupported {
                        n,
                        r_n: r_hi,
                        r_max: r_hi,
                    });
                }
                let mut lo = r_lo;
                let mut hi = r_hi;
                for _ in 0..200 {
                    let mid = (lo * hi).sqrt();
                    if phase(mid) < target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if (hi - lo) <= 1e-10 * hi {
                        break;
                    }
                }
                let r_n = (lo * hi).sqrt();
                levels.push(Level {
                    n,
                    energy: curve.value(r_n).min(-f64::MIN_POSITIVE),
                    outer_turning_point: r_n,
                });
            }
        }
    }
    let fit = fit_spectrum_model(&levels).ok();
    Ok(BoundSpectrum {
        method,
        levels,
        fit,
    })
}

/// Outward Numerov integration of w'' + Q w = 0 on a uniform grid in
/// s = ln rho. Returns u = chi sqrt(rho) samples, arbitrary
/// normalization, and the interior node count.
pub fn numerov_integrate<P: Potential>(
    potential: &P,
    beta: f64,
    e: f64,
    cfg: &NumerovConfig,
) -> Result<RadialSolution> {
    if e > 0.0 {
        return Err(Error::Domain {
            context: "numerov_integrate: E must be <= 0",
            value: e,
        });
    }
    let n = cfg.points;
    let s0 = cfg.rho_min.ln();
    let h = (cfg.rho_max.ln() - s0) / (n - 1) as f64;
    let mut grid = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for i in 0..n {
        let rho = (s0 + h * i as f64).exp();
        let qi = beta * rho * rho * (e - potential.value(rho));
        if qi > 0.0 {
            // de Broglie check: local wavelength 2 pi / sqrt(Q) in s
            // must span at least 8 grid steps
            let steps = 2.0 * PI / (qi.sqrt() * h);
            if qi.sqrt() * h > FRAC_PI_4 {
                return Err(Error::GridTooCoarse { rho, steps });
            }
        }
        grid.push(rho);
        q.push(qi);
    }
    let mut w = vec![0.0; n];
    match cfg.inner_bc {
        InnerBc::HardWall => {
            w[0] = 0.0;
            w[1] = h;
        }
        InnerBc::Regular => {
            let series = |qv: f64| 1.0 - qv / 4.0 + qv * qv / 64.0;
            w[0] = series(q[0]);
            w[1] = series(q[1]);
        }
    }
    let h2 = h * h;
    let h2_12 = h2 / 12.0;
    let mut node_count = 0;
    for i in 1..n - 1 {
        let stiff = h2 * q[i - 1].abs().max(q[i].abs()).max(q[i + 1].abs()) > 1.0;
        w[i + 1] = if stiff {
            // deep classically forbidden region (large positive Q is
            // already rejected by the de Broglie check): the Numerov
            // denominator 1 + h^2 Q / 12 changes sign and the stencil
            // oscillates spuriously; the basic three-term recurrence is
            // sign-stable there and the growing solution dominates anyway
            (2.0 - h2 * q[i]) * w[i] - w[i - 1]
        } else {
            let num = 2.0 * w[i] * (1.0 - 5.0 * h2_12 * q[i]) - w[i - 1] * (1.0 + h2_12 * q[i - 1]);
            num / (1.0 + h2_12 * q[i + 1])
        };
        // interior nodes, counted before repeated rescaling can
        // underflow early samples to zero and erase their signs
        if i < n - 2 && w[i] != 0.0 && w[i + 1] != 0.0 && w[i].signum() != w[i + 1].signum() {
            node_count += 1;
        }
        // rescale to avoid overflow in forbidden tails
        let mag = w[i + 1].abs();
        if mag > 1e200 {
            for v in w[..=i + 1].iter_mut() {
                *v /= mag;
            }
        }
    }
    let u_values: Vec<f64> = w
        .iter()
        .zip(&grid)
        .map(|(wi, rho)| wi * rho.sqrt())
        .collect();
    Ok(RadialSolution {
        grid,
        u_values,
        node_count,
        energy: e,
    })
}

fn node_count_at<P: Potential>(
    potential: &P,
    beta: f64,
    e: f64,
    cfg: &NumerovConfig,
) -> Result<usize> {
    Ok(numerov_integrate(potential, beta, e, cfg)?.node_count)
}

/// Eigenvalues by node-count bisection: level n is the energy where the
/// interior node count steps from n - 1 to n, refined to 1e-8 relative.
/// Returns fewer than `n_max` levels if the well supports fewer.
pub fn numerov_spectrum<P: Potential>(
    potential: &P,
    beta: f64,
    n_max: u32,
    cfg: &NumerovConfig,
) -> Result<BoundSpectrum> {
    let (v_min, rho_at_min) = {
        let s0 = cfg.rho_min.ln();
        let h = (cfg.rho_max.ln() - s0) / (cfg.points - 1) as f64;
        let mut best = (f64::INFINITY, cfg.rho_min);
        for i in 0..cfg.points {
            let rho = (s0 + h * i as f64).exp();
            let v = potential.value(rho);
            if v < best.0 {
                best = (v, rho);
            }
        }
        best
    };
    if !(v_min < 0.0) {
        return Ok(BoundSpectrum {
            method: SpectrumMethod::Numerov,
            levels: Vec::new(),
            fit: None,
        });
    }
    let e_floor = v_min * (1.0 - 1e-9);
    let supported = node_count_at(potential, beta, 0.0, cfg)?;
    let mut levels = Vec::new();
    for n in 1..=n_max.min(supported as u32) {
        let want = n as usize; // nodes(E) >= n just above level n
        let mut lo = levels.last().map_or(e_floor, |l: &Level| l.energy);
        let mut hi = 0.0;
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if node_count_at(potential, beta, mid, cfg)? >= want {
                hi = mid;
            } else {
                lo = mid;
            }
            if (hi - lo).abs() <= 1e-8 * hi.abs().max(1e-300) {
                break;
            }
        }
        let e_n = 0.5 * (lo + hi);
        let outer = turning_point(potential, e_n, rho_at_min).unwrap_or(cfg.rho_max);
        levels.push(Level {
            n,
            energy: e_n,
            outer_turning_point: outer,
        });
    }
    let fit = fit_spectrum_model(&levels).ok();
    Ok(BoundSpectrum {
        method: SpectrumMethod::Numerov,
        levels,
        fit,
    })
}

/// Semiclassical bound-state count N0 = (1/pi) sqrt(2 beta ln(a1/2));
/// +infinity at exact resonance (the count diverges logarithmically).
pub fn n0_estimate(params: &ModelParams) -> Result<f64> {
    if params.is_resonant() {
        return Ok(f64::INFINITY);
    }
    let a1 = params.a1();
    if a1 < 2.0 {
        return Err(Error::Domain {
            context: "n0_estimate: requires a1 >= 2",
            value: a1,
        });
    }
    Ok((2.0 * params.beta * (0.5 * a1).ln()).sqrt() / PI)
}

/// Least-squares line through (n^2, ln(n^2 |E_n|)); the negated slope
/// estimates pi^2 / (2 beta) and exp(intercept) the short-range energy
/// scale E0.
pub fn fit_spectrum_model(levels: &[Level]) -> Result<SpectrumFit> {
    if levels.len() < 4 {
        return Err(Error::InsufficientLevels {
            need: 4,
            have: levels.len(),
        });
    }
    let pts: Vec<(f64, f64)> = levels
        .iter()
        .map(|l| {
            let n2 = (l.n as f64).powi(2);
            (n2, (n2 * l.energy.abs()).ln())
        })
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::NonConvergence {
            context: "fit_spectrum_model: degenerate abscissae",
            iterations: 0,
        });
    }
    let b = (n * sxy - sx * sy) / denom;
    let a = (sy - b * sx) / n;
    let y_mean = sy / n;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - y_mean).powi(2)).sum();
    let ss_res: f64 = pts.iter().map(|p| (p.1 - (a + b * p.0)).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    Ok(SpectrumFit {
        e0_fit: a.exp(),
        slope_fit: -b,
        r_squared,
    })
}
