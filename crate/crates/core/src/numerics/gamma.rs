//! Log-gamma, the Stirling remainder and the regularized incomplete gamma
//! functions.

use std::f64::consts::PI;

const LN_PI: f64 = 1.144_729_885_849_400_2;
/// ln(2 * sqrt(e / pi))
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;
/// 0.5 * ln(2 * pi)
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

const LANCZOS_R: f64 = 10.900511;
#[allow(clippy::excessive_precision)]
const LANCZOS_DK: [f64; 11] = [
    2.485_740_891_387_535_655_46e-5,
    1.051_423_785_817_219_742_10,
    -3.456_870_972_220_162_354_69,
    4.512_277_094_668_948_237_00,
    -2.982_852_253_235_766_557_21,
    1.056_397_115_771_267_130_77,
    -1.954_287_731_916_458_695_83e-1,
    1.709_705_434_044_412_243_07e-2,
    -5.719_261_174_043_057_812_83e-4,
    4.633_994_733_599_056_367_08e-6,
    -2.719_949_084_886_077_039_10e-9,
];

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

/// Natural log of the gamma function for `x > 0` (Lanczos approximation,
/// Pugh's coefficients; about 15 correct digits).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (i, d)| s + d / (i as f64 - x));
        LN_PI
            - (PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / std::f64::consts::E).ln()
    } else {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (i, d)| s + d / (x + i as f64 - 1.0));
        s.ln()
            + LN_2_SQRT_E_OVER_PI
            + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln()
    }
}

/// Remainder of Stirling's series,
/// `ln_gamma(x) - [(x - 1/2) ln x - x + ln sqrt(2 pi)]`.
///
/// Uses the asymptotic series for `x >= 10` and the exact difference below.
pub(crate) fn stirling_remainder(x: f64) -> f64 {
    if x >= 10.0 {
        let r = 1.0 / x;
        let r2 = r * r;
        // 1/12x - 1/360x^3 + 1/1260x^5 - 1/1680x^7 + 1/1188x^9 - 691/360360x^11
        r * (1.0 / 12.0
            - r2 * (1.0 / 360.0
                - r2 * (1.0 / 1260.0
                    - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0))))))
    } else {
        ln_gamma(x) - ((x - 0.5) * x.ln() - x + LN_SQRT_2PI)
    }
}

/// Regularized upper incomplete gamma `Q(a, x)` for `a > 0`, `x >= 0`.
pub(crate) fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_fraction(a, x)
    }
}

/// Regularized lower incomplete gamma `P(a, x)` for `a > 0`, `x >= 0`.
#[allow(dead_code)]
pub(crate) fn gamma_p(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x < a + 1.0 {
        gamma_p_series(a, x)
    } else {
        1.0 - gamma_q_fraction(a, x)
    }
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
fn gamma_q_fraction(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}
