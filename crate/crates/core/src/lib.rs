//! Confidence intervals for the population F1 score of a binary classifier.
//!
//! Given a confusion matrix, [`methods`] builds four intervals:
//!
//! * **Clopper-Pearson**: exact binomial interval for F* = tp / (tp + fp + fn),
//!   mapped to F1 through `F1 = 2F*/(1 + F*)`.
//! * **Wald**: `F1_hat +/- z * se`, with the delta-method standard error.
//! * **Wilson direct**: inverts the score test on the F1 scale; the endpoints
//!   are the two roots in [0, 1] of a quartic in F1.
//! * **Wilson indirect**: the Wilson score interval for F*, mapped to F1.
//!
//! [`simulation`] measures coverage, expected length, overshoot and
//! degeneracy by Monte Carlo and by exact enumeration.
//!
//! ```
//! use f1ci::{compute_all, ConfusionCounts};
//!
//! let counts = ConfusionCounts::new(77, 44, 10, 702);
//! for (method, iv) in compute_all(&counts, 0.05).unwrap() {
//!     let iv = iv.unwrap();
//!     println!("{method}: [{:.3}, {:.3}]", iv.lower, iv.upper);
//! }
//! ```

pub mod error;
pub mod interval;
pub mod methods;
pub mod numerics;
pub mod score;
pub mod simulation;

pub use error::{Error, Result};
pub use interval::{ConfidenceInterval, Method, UnknownMethod};
pub use methods::{
    clopper_pearson, compute_all, interval, wald, wilson_direct, wilson_indirect, ConfidenceLevel,
};
pub use score::{
    estimates_from_counts, f1_from_fstar, f1_variance, fstar_from_f1, true_f1_from_probs,
    ConfusionCounts, PointEstimates,
};
