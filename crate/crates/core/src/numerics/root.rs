use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Tolerance used by the interval constructors.
pub const ROOT_TOL: f64 = 1e-12;

/// Finds a root of `f` inside `[lo, hi]`.
///
/// Brent's method: inverse quadratic interpolation and secant steps, falling
/// back to bisection whenever the interpolated step is poor. The iterate never
/// leaves the original bracket. Terminates once `|f(r)| <= tol` or the bracket
/// is narrower than `tol`.
pub fn find_bracketed_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            f_lo: f64::NAN,
            f_hi: f64::NAN,
        });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() || fa * fb > 0.0 {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let half = 0.5 * (c - b);
        if fb.abs() <= tol || half.abs() <= tol1 || fb == 0.0 {
            return Ok(b.clamp(lo, hi));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * half * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(half)
        };
        fb = f(b);
    }
    Err(Error::NoConvergence {
        routine: "bracketed root search",
        iterations: MAX_ITER,
    })
}

/// Real quartic `c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quartic {
    pub c4: f64,
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Quartic {
    pub fn new(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        Self { c4, c3, c2, c1, c0 }
    }

    /// The Wilson-direct score equation in F1 for `k = z^2 / nu` and the
    /// sample F1 score `f1_hat`.
    pub fn wilson_direct(k: f64, f1_hat: f64) -> Self {
        Self {
            c4: k,
            c3: -5.0 * k,
            c2: 2.0 * (4.0 * k + 1.0),
            c1: -4.0 * (k + f1_hat),
            c0: 2.0 * f1_hat * f1_hat,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (((self.c4 * x + self.c3) * x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn is_finite(&self) -> bool {
        [self.c4, self.c3, self.c2, self.c1, self.c0]
            .iter()
            .all(|c| c.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let r = find_bracketed_root(|x| x - 0.5, 0.0, 1.0, ROOT_TOL).unwrap();
        assert!((r - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sqrt_two() {
        // oracle: plain bisection to 60 halvings
        let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid * mid - 2.0 > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let r = find_bracketed_root(|x| x * x - 2.0, 1.0, 2.0, ROOT_TOL).unwrap();
        assert!((r - 0.5 * (lo + hi)).abs() < 1e-11);
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-11);
    }

    #[test]
    fn endpoint_roots_returned_exactly() {
        assert_eq!(find_bracketed_root(|x| x, 0.0, 1.0, ROOT_TOL).unwrap(), 0.0);
        assert_eq!(
            find_bracketed_root(|x| x - 1.0, 0.0, 1.0, ROOT_TOL).unwrap(),
            1.0
        );
    }

    #[test]
    fn same_sign_is_bracket_error() {
        let err = find_bracketed_root(|x| x * x + 1.0, -1.0, 1.0, ROOT_TOL).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket { .. }));
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| x.powi(3) - x - 1.0;
        let a = find_bracketed_root(f, 1.0, 2.0, ROOT_TOL).unwrap();
        let b = find_bracketed_root(f, 1.0, 2.0, ROOT_TOL).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn worked_example_quartic() {
        let q = Quartic::wilson_direct(0.029324, 0.740385);
        let r = find_bracketed_root(|x| q.eval(x), 0.740385, 1.0, ROOT_TOL).unwrap();
        assert_eq!(format!("{r:.3}"), "0.799");
        assert!(q.eval(r).abs() < 1e-12);
    }
}
