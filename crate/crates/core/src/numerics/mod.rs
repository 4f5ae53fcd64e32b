//! Special functions and root solvers used by the interval constructors.
//!
//! Everything here is self-contained 64-bit floating point so that results are
//! reproducible bit-for-bit across platforms that follow IEEE 754.

mod beta;
mod gamma;
mod normal;
mod root;

pub(crate) use beta::power_terms;
pub use beta::{beta_quantile, ln_beta, regularized_incomplete_beta};
pub use gamma::ln_gamma;
pub use normal::{normal_cdf, normal_quantile};
pub use root::{find_bracketed_root, Quartic, ROOT_TOL};
