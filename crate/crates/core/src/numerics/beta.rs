//! Regularized incomplete beta function and its inverse.

use super::gamma::{ln_gamma, stirling_remainder, LN_SQRT_2PI};
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const FRACTION_MAX_ITER: usize = 20_000;
const QUANTILE_MAX_ITER: usize = 200;
const QUANTILE_TOL: f64 = 1e-10;

fn check_shape(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain {
            what: "beta shape a",
            value: a,
        });
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain {
            what: "beta shape b",
            value: b,
        });
    }
    Ok(())
}

/// `ln B(a, b)`.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    if a >= 10.0 && b >= 10.0 {
        let c = a + b;
        (a - 0.5) * a.ln() + (b - 0.5) * b.ln() - (c - 0.5) * c.ln()
            + LN_SQRT_2PI
            + stirling_remainder(a)
            + stirling_remainder(b)
            - stirling_remainder(c)
    } else {
        ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
    }
}

/// `x^a (1-x)^b / B(a, b)`, with `y = 1 - x` supplied separately.
///
/// For large shapes the Stirling form keeps the cancellation between the
/// powers and the beta function out of the exponent.
pub(crate) fn power_terms(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if a >= 10.0 && b >= 10.0 {
        let c = a + b;
        let dev = x * b - y * a;
        let la = a * (dev / a).ln_1p();
        let lb = b * (-dev / b).ln_1p();
        let corr = stirling_remainder(c) - stirling_remainder(a) - stirling_remainder(b);
        (a * b / c).sqrt() / (2.0 * std::f64::consts::PI).sqrt() * (la + lb + corr).exp()
    } else {
        (a * x.ln() + b * y.ln() - ln_beta(a, b)).exp()
    }
}

/// Continued fraction for the incomplete beta (modified Lentz).
fn beta_fraction(a: f64, b: f64, x: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=FRACTION_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence {
        routine: "incomplete beta continued fraction",
        iterations: FRACTION_MAX_ITER,
    })
}

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// The continued fraction is evaluated directly below
/// `x = (a + 1) / (a + b + 2)` and through `1 - I_{1-x}(b, a)` above it.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    check_shape(a, b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "incomplete beta argument",
            value: x,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let y = 1.0 - x;
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(power_terms(a, b, x, y) * beta_fraction(a, b, x)? / a)
    } else {
        Ok(1.0 - power_terms(b, a, y, x) * beta_fraction(b, a, y)? / b)
    }
}

/// Beta(a, b) density.
fn beta_density(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    power_terms(a, b, x, 1.0 - x) / (x * (1.0 - x))
}

/// Starting point for the Newton iteration (normal approximation for
/// `a, b >= 1`, power-law tails otherwise).
fn initial_guess(p: f64, a: f64, b: f64) -> f64 {
    if a >= 1.0 && b >= 1.0 {
        let pp = if p < 0.5 { p } else { 1.0 - p };
        let t = (-2.0 * pp.ln()).sqrt();
        let mut x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
        if p < 0.5 {
            x = -x;
        }
        let al = (x * x - 3.0) / 6.0;
        let h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
        let w = x * (al + h).sqrt() / h
            - (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
        a / (a + b * (2.0 * w).exp())
    } else {
        let lna = (a / (a + b)).ln();
        let lnb = (b / (a + b)).ln();
        let t = (a * lna).exp() / a;
        let u = (b * lnb).exp() / b;
        let w = t + u;
        if p < t / w {
            (a * w * p).powf(1.0 / a)
        } else {
            1.0 - (b * w * (1.0 - p)).powf(1.0 / b)
        }
    }
}

/// Quantile of the Beta(a, b) distribution: the `x` with `I_x(a, b) = p`.
///
/// Solutions above 1/2 are found as `1 - y` with `I_y(b, a) = 1 - p`, so the
/// iteration always runs where floating-point spacing is fine. Newton's
/// method is safeguarded by a bisection bracket tightened on every
/// evaluation. Fails rather than returning an unconverged value; a bracket
/// collapsed to adjacent floats counts as converged.
pub fn beta_quantile(p: f64, a: f64, b: f64) -> Result<f64> {
    check_shape(a, b)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            what: "beta quantile probability",
            value: p,
        });
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    if p > regularized_incomplete_beta(0.5, a, b)? {
        Ok(1.0 - lower_half_quantile(1.0 - p, b, a)?)
    } else {
        lower_half_quantile(p, a, b)
    }
}

/// Solves `I_x(a, b) = p` for `x` in `(0, 1/2]`, given `I_{1/2}(a, b) >= p`.
fn lower_half_quantile(p: f64, a: f64, b: f64) -> Result<f64> {
    let mut lo = 0.0_f64;
    let mut hi = 0.5_f64;
    let mut x = initial_guess(p, a, b);
    if !(x > lo && x < hi) {
        x = 0.25;
    }

    for _ in 0..QUANTILE_MAX_ITER {
        let err = regularized_incomplete_beta(x, a, b)? - p;
        if err == 0.0 {
            return Ok(x);
        }
        if err < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let density = beta_density(x, a, b);
        let mut next = if density > 0.0 && density.is_finite() {
            x - err / density
        } else {
            f64::NAN
        };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == x || next == lo || next == hi {
            break;
        }
        let step = (next - x).abs();
        x = next;
        if step <= 4.0 * f64::EPSILON * x {
            break;
        }
    }

    let residual = (regularized_incomplete_beta(x, a, b)? - p).abs();
    let collapsed = hi.next_down() <= lo.next_up();
    if residual <= QUANTILE_TOL || collapsed {
        Ok(x)
    } else {
        Err(Error::NoConvergence {
            routine: "beta quantile",
            iterations: QUANTILE_MAX_ITER,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_case() {
        assert!((regularized_incomplete_beta(0.5, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((beta_quantile(0.5, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn closed_form_for_unit_a() {
        for &b in &[0.5, 1.0, 2.5, 7.0, 40.0] {
            for &x in &[0.01, 0.2, 0.5, 0.77, 0.99] {
                let expected = 1.0 - (1.0f64 - x).powf(b);
                let got = regularized_incomplete_beta(x, 1.0, b).unwrap();
                assert!((got - expected).abs() < 1e-13, "x={x} b={b}");
            }
        }
    }

    #[test]
    fn endpoints_and_reflection() {
        assert_eq!(regularized_incomplete_beta(0.0, 3.0, 4.0).unwrap(), 0.0);
        assert_eq!(regularized_incomplete_beta(1.0, 3.0, 4.0).unwrap(), 1.0);
        for &(x, a, b) in &[(0.3, 5.0, 7.0), (0.9, 0.5, 2.0), (0.45, 200.0, 250.0)] {
            let lhs = regularized_incomplete_beta(x, a, b).unwrap();
            let rhs = 1.0 - regularized_incomplete_beta(1.0 - x, b, a).unwrap();
            assert!((lhs - rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(regularized_incomplete_beta(-0.1, 1.0, 1.0).is_err());
        assert!(regularized_incomplete_beta(0.5, 0.0, 1.0).is_err());
        assert!(regularized_incomplete_beta(0.5, 1.0, -2.0).is_err());
        assert!(beta_quantile(1.1, 1.0, 1.0).is_err());
        assert!(beta_quantile(0.5, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn quantile_endpoints() {
        assert_eq!(beta_quantile(0.0, 3.0, 2.0).unwrap(), 0.0);
        assert_eq!(beta_quantile(1.0, 3.0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn upper_tail_quantile_uses_complement() {
        // I_x(1, b) = 1 - (1 - x)^b, so the p-quantile is 1 - (1 - p)^(1/b)
        for &(p, b) in &[(0.999_999, 0.5), (0.9, 3.0), (0.3, 40.0)] {
            let want = 1.0 - (1.0f64 - p).powf(1.0 / b);
            let got = beta_quantile(p, 1.0, b).unwrap();
            assert!(
                (got - want).abs() <= 1e-12 * want,
                "p={p} b={b}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn quantile_inverts_over_wide_shapes() {
        for &(a, b) in &[
            (0.5, 0.5),
            (2.0, 9000.0),
            (77.0, 55.0),
            (9000.0, 2.0),
            (1e4, 1e4),
        ] {
            for &p in &[1e-5, 0.025, 0.5, 0.975, 1.0 - 1e-5] {
                let x = beta_quantile(p, a, b).unwrap();
                let back = regularized_incomplete_beta(x, a, b).unwrap();
                assert!((back - p).abs() <= 1e-9, "a={a} b={b} p={p}: {back}");
            }
        }
    }

    #[test]
    fn ln_beta_branches_agree() {
        for &(a, b) in &[(10.0, 10.0), (12.5, 40.0), (300.0, 11.0)] {
            let direct = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
            assert!((ln_beta(a, b) - direct).abs() < 1e-10 * direct.abs().max(1.0));
        }
    }
}
