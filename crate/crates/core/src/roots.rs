//! Bracketed root finding: plain bisection plus a log-grid scan that
//! brackets every sign change before refining.

use crate::error::{Error, Result};

/// Bisect `f` on `[lo, hi]`, which must bracket a sign change.
/// Converges to `rel_tol` relative width (or absolute width for roots
/// near zero).
pub fn bisect<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoRoot {
            context: "bisect",
            lo,
            hi,
        });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        context: "bisect",
        iterations: max_iter,
    })
}

/// A root located by [`scan_roots`], with the residual left at the
/// converged abscissa.
#[derive(Debug, Clone, Copy)]
pub struct ScannedRoot {
    pub x: f64,
    pub residual: f64,
    pub converged: bool,
}

/// Scan `f` for sign changes on a log-spaced grid over `[lo, hi]` and
/// bisect each bracket. Non-finite samples are skipped. Returns roots in
/// increasing order; an empty result is a valid outcome.
pub fn scan_roots<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
    rel_tol: f64,
) -> Vec<ScannedRoot> {
    assert!(lo > 0.0 && hi > lo && grid_points >= 2);
    let log_lo = lo.ln();
    let step = (hi.ln() - log_lo) / (grid_points - 1) as f64;
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..grid_points {
        let x = (log_lo + step * i as f64).exp();
        let fx = f(x);
        if prev_f.is_finite() && fx.is_finite() && prev_f != 0.0 && prev_f.signum() != fx.signum() {
            match bisect(&mut f, prev_x, x, rel_tol, 200) {
                Ok(root) => roots.push(ScannedRoot {
                    x: root,
                    residual: f(root),
                    converged: true,
                }),
                Err(_) => roots.push(ScannedRoot {
                    x: 0.5 * (prev_x + x),
                    residual: f(0.5 * (prev_x + x)),
                    converged: false,
                }),
            }
        } else if fx == 0.0 {
            roots.push(ScannedRoot {
                x,
                residual: 0.0,
                converged: true,
            });
        }
        prev_x = x;
        prev_f = fx;
    }
    roots
}
