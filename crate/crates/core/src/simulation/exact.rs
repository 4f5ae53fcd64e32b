//! Exact coverage by enumeration instead of sampling.
//!
//! Conditional on `nu`, `tp ~ Binomial(nu, F*)`, so coverage and expected
//! length are finite sums over `tp = 0..=nu`. Unconditionally `nu` is itself
//! `Binomial(n, p11 + p10 + p01)`, which adds one more finite sum.

use crate::error::{check_probability, Error, Result};
use crate::interval::{ConfidenceInterval, Method};
use crate::methods::ConfidenceLevel;
use crate::numerics::power_terms;
use crate::score::f1_from_fstar_unchecked;

use super::{evaluate_interval, MethodMetrics, Scenario};

/// Largest `nu` accepted by the conditional enumeration.
pub const ENUMERATION_CAP: u64 = 10_000;

/// Terms below this probability are dropped from the unconditional sums.
const NEGLIGIBLE: f64 = 1e-18;

/// `P(K = k)` for `K ~ Binomial(n, p)`, via the beta-function form of the
/// binomial coefficient so large `n` keeps full relative precision.
pub fn binomial_pmf(k: u64, n: u64, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    if p <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    // C(n, k) = 1 / ((n + 1) B(k + 1, n - k + 1))
    let (kf, nf) = (k as f64, n as f64);
    let q = 1.0 - p;
    power_terms(kf + 1.0, nf - kf + 1.0, p, q) / ((nf + 1.0) * p * q)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCoverage {
    pub coverage: f64,
    pub expected_length: f64,
}

/// Precomputed intervals for every `tp = 0..=nu` at fixed `(nu, method, alpha)`,
/// reusable across many values of F*.
#[derive(Debug, Clone)]
pub struct ConditionalEnumerator {
    nu: u64,
    intervals: Vec<ConfidenceInterval>,
}

impl ConditionalEnumerator {
    pub fn new(nu: u64, method: Method, alpha: f64) -> Result<Self> {
        if nu == 0 {
            return Err(Error::UndefinedEstimate);
        }
        if nu > ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                nu,
                cap: ENUMERATION_CAP,
            });
        }
        let level = ConfidenceLevel::new(alpha)?;
        let intervals = (0..=nu)
            .map(|tp| {
                level
                    .bounds(method, tp, nu)
                    .map(|(lower, upper)| ConfidenceInterval {
                        method,
                        alpha,
                        lower,
                        upper,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { nu, intervals })
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn intervals(&self) -> &[ConfidenceInterval] {
        &self.intervals
    }

    /// Coverage of `f1_from_fstar(fstar)` and expected length when
    /// `tp ~ Binomial(nu, fstar)`.
    pub fn evaluate(&self, fstar: f64) -> Result<ExactCoverage> {
        let fstar = check_probability("F*", fstar)?;
        let target = f1_from_fstar_unchecked(fstar);
        let mut coverage = 0.0;
        let mut expected_length = 0.0;
        for (tp, iv) in self.intervals.iter().enumerate() {
            let w = binomial_pmf(tp as u64, self.nu, fstar);
            if w == 0.0 {
                continue;
            }
            if iv.contains(target) {
                coverage += w;
            }
            expected_length += w * iv.length();
        }
        Ok(ExactCoverage {
            coverage,
            expected_length,
        })
    }
}

/// Exact coverage and expected length of `method` conditional on `nu`.
pub fn exact_conditional_coverage(
    nu: u64,
    method: Method,
    alpha: f64,
    fstar: f64,
) -> Result<ExactCoverage> {
    ConditionalEnumerator::new(nu, method, alpha)?.evaluate(fstar)
}

/// Exact counterpart of the Monte Carlo condition metrics: enumerates
/// `nu ~ Binomial(n, p11 + p10 + p01)` and `tp | nu ~ Binomial(nu, F*)`,
/// dropping terms below 1e-18. Probabilities are renormalised over the
/// outcomes where the method is defined, mirroring the sampling harness.
pub fn exact_condition_metrics(
    scenario: &Scenario,
    n: u64,
    alpha: f64,
    method: Method,
) -> Result<MethodMetrics> {
    let level = ConfidenceLevel::new(alpha)?;
    let relevant = scenario.relevant_prob();
    let fstar = scenario.fstar();
    let mut mass = 0.0;
    let mut covered = 0.0;
    let mut length = 0.0;
    let mut overshoot = 0.0;
    let mut degenerate = 0.0;
    for nu in 1..=n {
        let w_nu = binomial_pmf(nu, n, relevant);
        if w_nu < NEGLIGIBLE {
            continue;
        }
        for tp in 0..=nu {
            let w = w_nu * binomial_pmf(tp, nu, fstar);
            if w < NEGLIGIBLE {
                continue;
            }
            let (lower, upper) = match level.bounds(method, tp, nu) {
                Ok(b) => b,
                Err(Error::WilsonDirectInvalid { .. }) => continue,
                Err(e) => return Err(e),
            };
            let e = evaluate_interval(
                &ConfidenceInterval {
                    method,
                    alpha,
                    lower,
                    upper,
                },
                scenario.true_f1,
            );
            mass += w;
            if e.covered {
                covered += w;
            }
            if e.overshoot {
                overshoot += w;
            }
            if e.degenerate {
                degenerate += w;
            }
            length += w * e.length;
        }
    }
    Ok(MethodMetrics {
        method,
        evaluated: 0,
        covered: 0,
        coverage: covered / mass,
        expected_length: length / mass,
        overshoot_prob: overshoot / mass,
        degeneracy_prob: degenerate / mass,
        skipped_invalid: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_sums_to_one() {
        for &(n, p) in &[(10u64, 0.3), (131, 0.587), (5000, 0.96)] {
            let s: f64 = (0..=n).map(|k| binomial_pmf(k, n, p)).sum();
            assert!((s - 1.0).abs() < 1e-12, "n={n}");
        }
        // small case by hand: C(4,2) 0.5^4
        assert!((binomial_pmf(2, 4, 0.5) - 0.375).abs() < 1e-14);
    }

    #[test]
    fn point_mass_at_zero() {
        for m in [Method::ClopperPearson, Method::Wald, Method::WilsonIndirect] {
            let c = exact_conditional_coverage(1, m, 0.05, 0.0).unwrap();
            assert_eq!(c.coverage, 1.0, "{m}");
        }
    }

    #[test]
    fn smallest_wald_case_is_finite() {
        let c = exact_conditional_coverage(1, Method::Wald, 0.05, 0.5).unwrap();
        assert!(c.coverage.is_finite() && c.expected_length.is_finite());
    }

    #[test]
    fn wilson_direct_below_threshold() {
        assert!(matches!(
            exact_conditional_coverage(2, Method::WilsonDirect, 0.05, 0.5),
            Err(Error::WilsonDirectInvalid { .. })
        ));
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            ConditionalEnumerator::new(ENUMERATION_CAP + 1, Method::Wald, 0.05),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn clopper_pearson_conservative_at_nu_30() {
        let e = ConditionalEnumerator::new(30, Method::ClopperPearson, 0.05).unwrap();
        for i in 1..1000 {
            let c = e.evaluate(i as f64 / 1000.0).unwrap();
            assert!(
                c.coverage >= 0.95,
                "F* = {}: {}",
                i as f64 / 1000.0,
                c.coverage
            );
        }
    }

    #[test]
    fn wald_anticonservative_somewhere_at_nu_30() {
        let e = ConditionalEnumerator::new(30, Method::Wald, 0.05).unwrap();
        let min = (1..1000)
            .map(|i| e.evaluate(i as f64 / 1000.0).unwrap().coverage)
            .fold(f64::INFINITY, f64::min);
        assert!(min < 0.95);
    }
}
