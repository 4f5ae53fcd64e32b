use thiserror::Error;

/// Errors raised by the estimators, interval constructors and numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    /// tp + fp + fn = 0, so neither the F1 nor the F* estimate exists.
    #[error("F1 estimate undefined: no relevant observations (tp + fp + fn = 0)")]
    UndefinedEstimate,

    /// The bracket handed to a root finder does not straddle a sign change.
    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi} have the same sign")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// An iterative routine hit its iteration cap without meeting its tolerance.
    #[error("{routine} did not converge within {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    /// The Wilson-direct quartic is only guaranteed two distinct roots in
    /// [0, 1] when k = z^2 / nu < 16/11.
    #[error(
        "wilson-direct interval needs nu > (11/16) z^2: got nu = {nu}, need nu >= {min_nu} at alpha = {alpha}"
    )]
    WilsonDirectInvalid { nu: u64, min_nu: u64, alpha: f64 },

    /// A cell probability vector that is negative, does not sum to one, or
    /// puts no mass on the relevant cells.
    #[error("invalid cell probabilities: {0}")]
    InvalidProbabilities(String),

    /// Exact enumeration was requested beyond the supported size.
    #[error("nu = {nu} exceeds the enumeration cap of {cap}")]
    EnumerationCap { nu: u64, cap: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_probability(what: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain { what, value })
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(alpha)
    } else {
        Err(Error::Domain {
            what: "alpha",
            value: alpha,
        })
    }
}
