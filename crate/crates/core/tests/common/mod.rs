//! Shared oracles for the integration tests. Everything here is
//! independent of the library's own numerics: its own integrator, its
//! own special-function representations.

/// Composite Simpson rule with a fixed (even) number of intervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(intervals >= 2 && intervals.is_multiple_of(2));
    let h = (b - a) / intervals as f64;
    let mut sum = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * i as f64);
    }
    sum * h / 3.0
}

/// Modified Bessel K_m(x) from its integral representation
/// K_m(x) = integral_0^inf exp(-x cosh t) cosh(m t) dt.
/// The integrand decays like exp(-x e^t / 2) once x cosh t >> 1; beyond
/// u = x (cosh t - 1) = 60 the remaining tail is below 1e-12 of the
/// total even for m = 2 at x = 1e-6.
pub fn bessel_k_quadrature(order: u32, x: f64) -> f64 {
    assert!(x > 0.0);
    let t_max = (1.0 + 60.0 / x).acosh();
    simpson(
        |t| (-x * t.cosh()).exp() * (order as f64 * t).cosh(),
        0.0,
        t_max,
        1 << 14,
    )
}

#[allow(dead_code)]
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
