//! Modified Bessel functions of the second kind, `K_m(x)`, for integer
//! orders and real positive argument.
//!
//! `K_0` and `K_1` are evaluated directly: the ascending power series for
//! `x <= 2` and a Chebyshev fit of `e^x sqrt(x) K_m(x)` in the variable
//! `8/x - 2` for `x > 2`. Higher orders follow from the forward recurrence
//! `K_{m+1}(x) = K_{m-1}(x) + (2m/x) K_m(x)`, which is stable for K in
//! increasing order. Scaled variants `e^x K_m(x)` stay finite out to
//! arbitrarily large arguments.

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_CUTOFF: f64 = 2.0;

// Chebyshev coefficients for e^x sqrt(x) K0(x), argument v = (8/x - 2)/2,
// valid on x in [2, inf). Max relative error of the fit: 7e-19.
#[allow(clippy::excessive_precision)] // raw minimax-fit coefficients
const K0E_CHEB: [f64; 26] = [
    1.220_151_541_032_977_7,
    -0.031_448_101_311_964_5,
    1.569_883_885_730_053_4e-3,
    -1.284_954_958_162_780_3e-4,
    1.394_981_371_887_65e-5,
    -1.831_755_522_719_119_5e-6,
    2.766_813_639_445_015e-7,
    -4.660_489_897_687_947_7e-8,
    8.574_034_017_414_226e-9,
    -1.697_534_509_389_061_5e-9,
    3.577_397_281_400_328_6e-10,
    -7.957_489_244_477_397e-11,
    1.855_949_114_954_926_6e-11,
    -4.514_597_883_374_519e-12,
    1.140_340_588_207_344_2e-12,
    -2.980_096_923_148_178_4e-13,
    8.032_890_775_068_374e-14,
    -2.227_513_326_746_296_4e-14,
    6.340_076_476_276_646e-15,
    -1.848_593_377_920_907_2e-15,
    5.512_055_999_404_333e-16,
    -1.678_231_125_754_900_6e-16,
    5.210_391_777_643_554e-17,
    -1.647_580_593_984_263_3e-17,
    5.300_433_771_177_336e-18,
    -1.733_171_200_582_1e-18,
];

// Chebyshev coefficients for e^x sqrt(x) K1(x), same argument and range.
#[allow(clippy::excessive_precision)]
const K1E_CHEB: [f64; 26] = [
    1.360_313_095_242_221_3,
    0.103_923_736_576_817_24,
    -2.857_816_859_622_779_4e-3,
    1.952_155_184_713_516_3e-4,
    -1.936_197_974_166_083e-5,
    2.406_484_947_837_217e-6,
    -3.501_960_603_087_812_5e-7,
    5.741_084_125_450_049e-8,
    -1.034_576_246_567_809_7e-8,
    2.015_049_755_197_034_6e-9,
    -4.190_354_759_341_925_6e-10,
    9.218_315_187_605_314e-11,
    -2.129_967_838_427_791e-11,
    5.139_639_673_482_343_5e-12,
    -1.289_173_960_949_823e-12,
    3.348_419_666_052_243e-13,
    -8.976_705_182_010_146e-14,
    2.477_154_424_219_598_7e-14,
    -7.019_837_089_214_769e-15,
    2.038_703_166_239_861e-15,
    -6.057_047_270_643_018e-16,
    1.838_093_575_243_045_4e-16,
    -5.689_462_849_193_648e-17,
    1.794_051_047_886_357_3e-17,
    -5.756_744_482_073_302_5e-18,
    1.877_865_190_162_326_7e-18,
];

fn clenshaw(v: f64, coeffs: &[f64]) -> f64 {
    let mut b0 = 0.0;
    let mut b1 = 0.0;
    for &ck in coeffs.iter().skip(1).rev() {
        let t = 2.0 * v * b0 - b1 + ck;
        b1 = b0;
        b0 = t;
    }
    coeffs[0] + v * b0 - b1
}

/// I0 and I1 by their (entire) power series; used by the K series below and
/// by the non-resonant channel model of the truncated system.
pub(crate) fn bessel_i_series(order: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    for k in 1..=order as u64 {
        term *= 0.5 * x / k as f64;
    }
    let mut sum = term;
    let mut k = 1u64;
    loop {
        term *= q / (k * (k + order as u64)) as f64;
        sum += term;
        if term < sum * 1e-17 || k > 300 {
            break;
        }
        k += 1;
    }
    sum
}

// Ascending series for K0, x <= 2.
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let i0 = bessel_i_series(0, x);
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut h = 0.0;
    for k in 1..60u64 {
        term *= q / (k * k) as f64;
        h += 1.0 / k as f64;
        let add = term * h;
        sum += add;
        if add < sum.abs() * 1e-17 + 1e-300 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + sum
}

// Ascending series for K1, x <= 2.
fn k1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let i1 = bessel_i_series(1, x);
    // sum over psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
    let mut sum = 0.0;
    let mut term = 1.0; // q^k / (k! (k+1)!)
    let mut hk = 0.0;
    for k in 0..60u64 {
        if k > 0 {
            term *= q / (k * (k + 1)) as f64;
            hk += 1.0 / k as f64;
        }
        let hk1 = hk + 1.0 / (k + 1) as f64;
        let add = term * (-2.0 * EULER_GAMMA + hk + hk1);
        sum += add;
        if term < 1e-18 {
            break;
        }
    }
    (0.5 * x).ln() * i1 + 1.0 / x - 0.25 * x * sum
}

fn check_domain(x: f64, context: &'static str) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::Domain { context, value: x });
    }
    Ok(())
}

fn k01_scaled(order: u32, x: f64) -> f64 {
    if x <= SERIES_CUTOFF {
        let raw = if order == 0 {
            k0_series(x)
        } else {
            k1_series(x)
        };
        raw * x.exp()
    } else {
        let v = (8.0 / x - 2.0) / 2.0;
        let cheb = if order == 0 { &K0E_CHEB } else { &K1E_CHEB };
        clenshaw(v, cheb) / x.sqrt()
    }
}

/// `e^x K_m(x)`. Finite and positive for all `x > 0`, approaching
/// `sqrt(pi/(2x))` as `x -> inf`.
pub fn bessel_k_scaled(order: u32, x: f64) -> Result<f64> {
    check_domain(x, "bessel_k_scaled")?;
    if order <= 1 {
        return Ok(k01_scaled(order, x));
    }
    let mut km1 = k01_scaled(0, x);
    let mut k = k01_scaled(1, x);
    for m in 1..order {
        let next = km1 + (2.0 * m as f64 / x) * k;
        km1 = k;
        k = next;
    }
    Ok(k)
}

/// `K_m(x)`. Underflows to zero for `x` beyond roughly 700; use
/// [`bessel_k_scaled`] there.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    check_domain(x, "bessel_k")?;
    if x <= SERIES_CUTOFF && order <= 1 {
        return Ok(if order == 0 {
            k0_series(x)
        } else {
            k1_series(x)
        });
    }
    Ok(bessel_k_scaled(order, x)? * (-x).exp())
}

/// Scaled values `e^x K_0(x) .. e^x K_mmax(x)` in one recurrence pass.
pub fn bessel_k_scaled_upto(max_order: u32, x: f64) -> Result<Vec<f64>> {
    check_domain(x, "bessel_k_scaled_upto")?;
    let mut out = Vec::with_capacity(max_order as usize + 1);
    out.push(k01_scaled(0, x));
    if max_order >= 1 {
        out.push(k01_scaled(1, x));
        for m in 1..max_order {
            let next = out[(m - 1) as usize] + (2.0 * m as f64 / x) * out[m as usize];
            out.push(next);
        }
    }
    Ok(out)
}

/// One evaluation of `K_order` together with its scaled companion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub order: u32,
    pub argument: f64,
    pub value: f64,
    pub scaled_value: f64,
}

impl BesselEval {
    pub fn compute(order: u32, argument: f64) -> Result<Self> {
        let scaled_value = bessel_k_scaled(order, argument)?;
        let value = if argument <= SERIES_CUTOFF && order <= 1 {
            bessel_k(order, argument)?
        } else {
            scaled_value * (-argument).exp()
        };
        Ok(Self {
            order,
            argument,
            value,
            scaled_value,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn k0_at_one() {
        assert_relative_eq!(
            bessel_k(0, 1.0).unwrap(),
            0.421024438240708,
            max_relative = 1e-12
        );
    }

    #[test]
    fn k2_small_argument_behaves_as_2_over_x_squared() {
        let x = 1e-4;
        let k2 = bessel_k(2, x).unwrap();
        assert_relative_eq!(k2, 2.0 / (x * x), max_relative = 1e-3);
    }

    #[test]
    fn k0_small_argument_log_behavior() {
        let x = 1e-6f64;
        let k0 = bessel_k(0, x).unwrap();
        let expected = -x.ln() - EULER_GAMMA + 2f64.ln();
        assert_relative_eq!(k0, expected, max_relative = 1e-4);
    }

    #[test]
    fn recurrence_identity_at_half() {
        let k0 = bessel_k(0, 0.5).unwrap();
        let k1 = bessel_k(1, 0.5).unwrap();
        let k2 = bessel_k(2, 0.5).unwrap();
        assert!((k2 - k0 - 4.0 * k1).abs() < 1e-10 * k2);
    }

    #[test]
    fn scaled_matches_large_x_asymptotic_series() {
        // e^x K0(x) = sqrt(pi/2x) [1 - 1/(8x) + 9/(2!(8x)^2) - 225/(3!(8x)^3) + ...]
        let x = 1000.0f64;
        let z = 8.0 * x;
        let series = 1.0 - 1.0 / z + 9.0 / (2.0 * z * z) - 225.0 / (6.0 * z * z * z);
        let expected = (std::f64::consts::PI / (2.0 * x)).sqrt() * series;
        assert_relative_eq!(
            bessel_k_scaled(0, x).unwrap(),
            expected,
            max_relative = 1e-8
        );
    }

    #[test]
    fn scaled_is_consistent_with_unscaled() {
        let x = 3.0;
        let lhs = bessel_k_scaled(1, x).unwrap() * (-x).exp();
        assert_relative_eq!(lhs, bessel_k(1, x).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn scaled_finite_at_huge_argument() {
        let v = bessel_k_scaled(0, 1e6).unwrap();
        assert!(v.is_finite() && v > 0.0);
        let v8 = bessel_k_scaled(0, 1e8).unwrap();
        assert!(v8.is_finite() && v8 > 0.0);
        // limit sqrt(pi/(2x))
        assert_relative_eq!(v8, (std::f64::consts::PI / 2e8).sqrt(), max_relative = 1e-8);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_k(0, 0.0).is_err());
        assert!(bessel_k(1, -1.0).is_err());
        assert!(bessel_k_scaled(2, -0.5).is_err());
    }

    #[test]
    fn recurrence_residual_on_log_grid() {
        // |K2 - K0 - (2/x) K1| / K2 < 1e-10 across [1e-6, 100]
        let n = 200;
        for i in 0..=n {
            let x = 10f64.powf(-6.0 + 8.0 * i as f64 / n as f64);
            let k0 = bessel_k_scaled(0, x).unwrap();
            let k1 = bessel_k_scaled(1, x).unwrap();
            let k2 = bessel_k_scaled(2, x).unwrap();
            let resid = (k2 - k0 - 2.0 / x * k1).abs() / k2;
            assert!(resid < 1e-10, "residual {} at x = {}", resid, x);
        }
    }

    #[test]
    fn series_cheb_join_is_smooth() {
        let below = bessel_k(0, SERIES_CUTOFF - 1e-9).unwrap();
        let above = bessel_k(0, SERIES_CUTOFF + 1e-9).unwrap();
        assert_relative_eq!(below, above, max_relative = 1e-7);
    }

    proptest! {
        #[test]
        fn orders_are_ordered(x in 1e-6f64..100.0, m in 0u32..5) {
            let lo = bessel_k_scaled(m, x).unwrap();
            let hi = bessel_k_scaled(m + 1, x).unwrap();
            prop_assert!(hi > lo);
        }

        #[test]
        fn strictly_decreasing_in_x(x in 1e-4f64..200.0, m in 0u32..4) {
            let a = bessel_k(m, x).unwrap();
            let b = bessel_k(m, x * 1.01).unwrap();
            prop_assert!(b < a);
        }

        #[test]
        fn positive_everywhere(x in 1e-8f64..700.0, m in 0u32..6) {
            prop_assert!(bessel_k(m, x).unwrap() > 0.0);
        }
    }
}
