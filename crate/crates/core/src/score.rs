//! Confusion-matrix counts, the sample F1 / F* estimators, the F* <-> F1
//! transform and the delta-method variance of the sample F1 score.
//!
//! F* (the Jaccard coefficient) is the share of true positives among the
//! relevant observations `nu = tp + fp + fn`; F1 = 2 F* / (1 + F*) is a
//! strictly increasing function of it on [0, 1].

use crate::error::{check_probability, Error, Result};

/// Cell counts of a binary confusion matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    /// Carried for completeness; no F1 formula uses it.
    pub tn: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        Self { tp, fp, fn_, tn }
    }

    /// Number of relevant observations, `tp + fp + fn`.
    pub fn nu(&self) -> u64 {
        self.tp + self.fp + self.fn_
    }

    pub fn total(&self) -> u64 {
        self.nu() + self.tn
    }
}

/// Sample estimates derived from a [`ConfusionCounts`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEstimates {
    pub nu: u64,
    pub fstar_hat: f64,
    pub f1_hat: f64,
}

/// Computes `nu`, the sample F* and the sample F1 score.
///
/// `f1_hat` is taken from the count form `2 tp / (2 tp + fp + fn)`; it agrees
/// with `f1_from_fstar(fstar_hat)` up to rounding.
pub fn estimates_from_counts(c: &ConfusionCounts) -> Result<PointEstimates> {
    let nu = c.nu();
    if nu == 0 {
        return Err(Error::UndefinedEstimate);
    }
    let tp = c.tp as f64;
    Ok(PointEstimates {
        nu,
        fstar_hat: tp / nu as f64,
        f1_hat: 2.0 * tp / (2.0 * tp + (c.fp + c.fn_) as f64),
    })
}

/// `F1 = 2 F* / (1 + F*)`.
pub fn f1_from_fstar(fstar: f64) -> Result<f64> {
    let fstar = check_probability("F*", fstar)?;
    Ok(f1_from_fstar_unchecked(fstar))
}

#[inline]
pub(crate) fn f1_from_fstar_unchecked(fstar: f64) -> f64 {
    2.0 * fstar / (1.0 + fstar)
}

/// `F* = F1 / (2 - F1)`.
pub fn fstar_from_f1(f1: f64) -> Result<f64> {
    let f1 = check_probability("F1", f1)?;
    Ok(f1 / (2.0 - f1))
}

/// Delta-method variance of the sample F1 score,
/// `F1 (1 - F1) (2 - F1)^2 / (2 nu)`.
///
/// The F*-scale form `[2 / (1 + F*)^2]^2 F*(1 - F*) / nu` is algebraically
/// the same quantity; both carry a single factor of `1 / nu`.
pub fn f1_variance(f1: f64, nu: u64) -> Result<f64> {
    let f1 = check_probability("F1", f1)?;
    if nu == 0 {
        return Err(Error::Domain {
            what: "nu",
            value: 0.0,
        });
    }
    Ok(f1 * (1.0 - f1) * (2.0 - f1).powi(2) / (2.0 * nu as f64))
}

/// Population F1 score `2 p11 / (2 p11 + p10 + p01)` from cell probabilities.
pub fn true_f1_from_probs(p11: f64, p10: f64, p01: f64, p00: f64) -> Result<f64> {
    validate_cell_probs([p11, p10, p01, p00])?;
    Ok(2.0 * p11 / (2.0 * p11 + p10 + p01))
}

/// Checks that `p` is a probability vector over (tp, fp, fn, tn) cells with
/// some mass on the relevant cells.
pub fn validate_cell_probs(p: [f64; 4]) -> Result<()> {
    if let Some(bad) = p.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidProbabilities(format!(
            "cell probability {bad} is negative or not finite"
        )));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidProbabilities(format!(
            "probabilities sum to {sum}, not 1"
        )));
    }
    if p[0] + p[1] + p[2] <= 0.0 {
        return Err(Error::InvalidProbabilities(
            "p11 + p10 + p01 = 0, so F1 is undefined".into(),
        ));
    }
    Ok(())
}
