//! The four confidence-interval constructors for the population F1 score.
//!
//! Every method depends on the counts only through `(tp, nu)` and on `alpha`.
//! Clopper-Pearson and Wilson-indirect work on the F* scale and map their
//! endpoints through `F1 = 2F*/(1 + F*)`; Wald and Wilson-direct work on the
//! F1 scale with the delta-method variance.

use crate::error::{check_alpha, Error, Result};
use crate::interval::{ConfidenceInterval, Method};
use crate::numerics::{beta_quantile, find_bracketed_root, normal_quantile, Quartic, ROOT_TOL};
use crate::score::{estimates_from_counts, f1_from_fstar_unchecked, ConfusionCounts};

/// `alpha` together with its two-sided critical value `z = Phi^-1(1 - alpha/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceLevel {
    alpha: f64,
    z: f64,
}

impl ConfidenceLevel {
    pub fn new(alpha: f64) -> Result<Self> {
        let alpha = check_alpha(alpha)?;
        let z = -normal_quantile(0.5 * alpha)?;
        Ok(Self { alpha, z })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `k = z^2 / nu`.
    pub fn k(&self, nu: u64) -> f64 {
        self.z * self.z / nu as f64
    }

    /// Smallest `nu` with `nu > (11/16) z^2`, i.e. `k < 16/11`.
    pub fn wilson_direct_min_nu(&self) -> u64 {
        (11.0 * self.z * self.z / 16.0).floor() as u64 + 1
    }

    /// Endpoints of `method` for `n11` true positives among `nu` relevant
    /// observations.
    pub fn bounds(&self, method: Method, n11: u64, nu: u64) -> Result<(f64, f64)> {
        if nu == 0 {
            return Err(Error::UndefinedEstimate);
        }
        if n11 > nu {
            return Err(Error::Domain {
                what: "true positives exceeding nu",
                value: n11 as f64,
            });
        }
        match method {
            Method::ClopperPearson => self.clopper_pearson_bounds(n11, nu),
            Method::Wald => Ok(self.wald_bounds(n11, nu)),
            Method::WilsonDirect => self.wilson_direct_bounds(n11, nu),
            Method::WilsonIndirect => {
                let (lo, hi) = self.wilson_fstar_bounds(n11, nu);
                Ok((f1_from_fstar_unchecked(lo), f1_from_fstar_unchecked(hi)))
            }
        }
    }

    pub fn interval(&self, method: Method, c: &ConfusionCounts) -> Result<ConfidenceInterval> {
        let (lower, upper) = self.bounds(method, c.tp, c.nu())?;
        Ok(ConfidenceInterval {
            method,
            alpha: self.alpha,
            lower,
            upper,
        })
    }

    fn clopper_pearson_bounds(&self, n11: u64, nu: u64) -> Result<(f64, f64)> {
        let tail = 0.5 * self.alpha;
        let (x, nu) = (n11 as f64, nu as f64);
        let lo = if n11 == 0 {
            0.0
        } else {
            beta_quantile(tail, x, nu - x + 1.0)?
        };
        // upper tail via I_x(a, b) = 1 - I_{1-x}(b, a)
        let hi = if x == nu {
            1.0
        } else {
            1.0 - beta_quantile(tail, nu - x, x + 1.0)?
        };
        Ok((f1_from_fstar_unchecked(lo), f1_from_fstar_unchecked(hi)))
    }

    fn wald_bounds(&self, n11: u64, nu: u64) -> (f64, f64) {
        let f1 = sample_f1(n11, nu);
        let var = f1 * (1.0 - f1) * (2.0 - f1).powi(2) / (2.0 * nu as f64);
        let half = self.z * var.sqrt();
        (f1 - half, f1 + half)
    }

    /// Wilson score interval for F* (roots of the score quadratic).
    pub fn wilson_fstar_bounds(&self, n11: u64, nu: u64) -> (f64, f64) {
        let k = self.k(nu);
        let p = n11 as f64 / nu as f64;
        let disc = k * k + 4.0 * k * p * (1.0 - p);
        let hi = if n11 == nu {
            1.0
        } else {
            ((2.0 * p + k + disc.sqrt()) / (2.0 * (1.0 + k))).min(1.0)
        };
        // product of the roots is p^2 / (1 + k)
        let lo = if n11 == 0 {
            0.0
        } else {
            p * p / ((1.0 + k) * hi)
        };
        (lo, hi)
    }

    fn wilson_direct_bounds(&self, n11: u64, nu: u64) -> Result<(f64, f64)> {
        if nu < self.wilson_direct_min_nu() {
            return Err(Error::WilsonDirectInvalid {
                nu,
                min_nu: self.wilson_direct_min_nu(),
                alpha: self.alpha,
            });
        }
        let k = self.k(nu);
        let f1 = sample_f1(n11, nu);
        if n11 == 0 {
            // f(F) = F * g(F), g(0) = -4k < 0, g(1) = 2 > 0
            let g = |x: f64| ((k * x - 5.0 * k) * x + 2.0 * (4.0 * k + 1.0)) * x - 4.0 * k;
            let hi = find_bracketed_root(g, 0.0, 1.0, ROOT_TOL)?;
            return Ok((0.0, hi));
        }
        if n11 == nu {
            // f(F) = (F - 1) * h(F), h(0) = -2 < 0, h(1) = k > 0
            let h = |x: f64| k * x * (x - 2.0) * (x - 2.0) + 2.0 * (x - 1.0);
            let lo = find_bracketed_root(h, 0.0, 1.0, ROOT_TOL)?;
            return Ok((lo, 1.0));
        }
        // f(F) = kF(F-1)(F-2)^2 + 2(F - f1): positive at 0 and 1, negative at f1
        let f = |x: f64| k * x * (x - 1.0) * (x - 2.0) * (x - 2.0) + 2.0 * (x - f1) * (x - f1);
        let lo = find_bracketed_root(f, 0.0, f1, ROOT_TOL)?;
        let hi = find_bracketed_root(f, f1, 1.0, ROOT_TOL)?;
        Ok((lo, hi))
    }

    /// The Wilson-direct quartic for `(n11, nu)`.
    pub fn wilson_direct_quartic(&self, n11: u64, nu: u64) -> Quartic {
        Quartic::wilson_direct(self.k(nu), sample_f1(n11, nu))
    }
}

/// Sample F1 from `(n11, nu)`: `2 n11 / (n11 + nu)`, equal to
/// `2 tp / (2 tp + fp + fn)`.
#[inline]
pub(crate) fn sample_f1(n11: u64, nu: u64) -> f64 {
    2.0 * n11 as f64 / (n11 + nu) as f64
}

/// Clopper-Pearson (exact binomial) interval, mapped to the F1 scale.
pub fn clopper_pearson(c: &ConfusionCounts, alpha: f64) -> Result<ConfidenceInterval> {
    ConfidenceLevel::new(alpha)?.interval(Method::ClopperPearson, c)
}

/// Wald interval `f1_hat +/- z sigma_hat`. Endpoints are not clipped.
pub fn wald(c: &ConfusionCounts, alpha: f64) -> Result<ConfidenceInterval> {
    ConfidenceLevel::new(alpha)?.interval(Method::Wald, c)
}

/// Wilson-direct interval: the two roots in [0, 1] of the score quartic in F1.
///
/// Needs `nu > (11/16) z^2`; below that the quartic may have more than two
/// real roots and the method reports [`Error::WilsonDirectInvalid`].
pub fn wilson_direct(c: &ConfusionCounts, alpha: f64) -> Result<ConfidenceInterval> {
    ConfidenceLevel::new(alpha)?.interval(Method::WilsonDirect, c)
}

/// Wilson-indirect interval: the Wilson score interval for F*, mapped to F1.
pub fn wilson_indirect(c: &ConfusionCounts, alpha: f64) -> Result<ConfidenceInterval> {
    ConfidenceLevel::new(alpha)?.interval(Method::WilsonIndirect, c)
}

pub fn interval(method: Method, c: &ConfusionCounts, alpha: f64) -> Result<ConfidenceInterval> {
    ConfidenceLevel::new(alpha)?.interval(method, c)
}

/// All four intervals in canonical order. Per-method failures are carried in
/// their entry; only an undefined estimate or a bad `alpha` fails the call.
pub fn compute_all(
    c: &ConfusionCounts,
    alpha: f64,
) -> Result<Vec<(Method, Result<ConfidenceInterval>)>> {
    estimates_from_counts(c)?;
    let level = ConfidenceLevel::new(alpha)?;
    Ok(Method::ALL
        .iter()
        .map(|&m| (m, level.interval(m, c)))
        .collect())
}
