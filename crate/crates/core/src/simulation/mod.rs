//! Monte Carlo evaluation of the interval methods, and an exact-enumeration
//! oracle for the same quantities.
//!
//! A run draws `replicates` confusion matrices from `Multinomial(n; p)` and
//! reduces them to a histogram over `(tp, nu)`. Every method depends on a
//! sample only through that pair, so each distinct pair is evaluated once and
//! weighted by its count. The histogram is an integer reduction, which makes
//! the result bit-identical for any number of worker threads.

mod exact;
mod sampler;
mod scenario;

use std::collections::{BTreeMap, HashMap};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{check_probability, Error, Result};
use crate::interval::{ConfidenceInterval, Method};
use crate::methods::ConfidenceLevel;
use crate::score::f1_from_fstar_unchecked;

pub use exact::{
    binomial_pmf, exact_condition_metrics, exact_conditional_coverage, ConditionalEnumerator,
    ExactCoverage, ENUMERATION_CAP,
};
pub use sampler::{binomial, multinomial_sample, ReplicateStreams};
pub use scenario::{builtin_scenarios, Scenario};

/// Replicate count for quick runs; the reference study used 10^6.
pub const DEFAULT_REPLICATES: u64 = 100_000;

/// Replicates handled per unit of parallel work. Fixed so the partition does
/// not depend on the thread count.
const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub scenario: Scenario,
    pub n: u64,
    pub replicates: u64,
    pub alpha: f64,
    pub seed: u64,
    pub methods: Vec<Method>,
}

impl SimulationConfig {
    pub fn new(scenario: Scenario, n: u64, replicates: u64, alpha: f64, seed: u64) -> Self {
        Self {
            scenario,
            n,
            replicates,
            alpha,
            seed,
            methods: Method::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain {
                what: "sample size n",
                value: 0.0,
            });
        }
        if self.replicates == 0 {
            return Err(Error::Domain {
                what: "replicates",
                value: 0.0,
            });
        }
        ConfidenceLevel::new(self.alpha)?;
        Scenario::new(self.scenario.id.clone(), self.scenario.probs)?;
        Ok(())
    }
}

/// Outcome of checking one interval against the true parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalEvaluation {
    pub covered: bool,
    pub length: f64,
    pub overshoot: bool,
    pub degenerate: bool,
}

/// Coverage uses the closed interval, so a zero-width interval sitting on the
/// true value counts as covering it.
pub fn evaluate_interval(iv: &ConfidenceInterval, true_f1: f64) -> IntervalEvaluation {
    IntervalEvaluation {
        covered: iv.contains(true_f1),
        length: iv.length(),
        overshoot: iv.overshoots(),
        degenerate: iv.is_degenerate(),
    }
}

/// Aggregated performance of one method in one condition.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodMetrics {
    pub method: Method,
    /// Replicates that produced an interval for this method.
    pub evaluated: u64,
    pub covered: u64,
    pub coverage: f64,
    pub expected_length: f64,
    pub overshoot_prob: f64,
    pub degeneracy_prob: f64,
    /// Replicates where this method was not applicable (Wilson-direct with
    /// `nu <= (11/16) z^2`).
    pub skipped_invalid: u64,
}

impl MethodMetrics {
    /// Binomial standard error of the coverage estimate.
    pub fn coverage_std_error(&self) -> f64 {
        if self.evaluated == 0 {
            return f64::NAN;
        }
        (self.coverage * (1.0 - self.coverage) / self.evaluated as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionMetrics {
    pub scenario: Scenario,
    pub n: u64,
    pub alpha: f64,
    pub seed: u64,
    pub replicates: u64,
    /// Replicates with `tp + fp + fn = 0`, excluded from every method.
    pub skipped_nu_zero: u64,
    pub methods: Vec<MethodMetrics>,
}

impl ConditionMetrics {
    pub fn method(&self, m: Method) -> Option<&MethodMetrics> {
        self.methods.iter().find(|x| x.method == m)
    }
}

/// Replicate counts keyed by `(tp, nu)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountHistogram {
    counts: BTreeMap<(u64, u64), u64>,
    nu_zero: u64,
    total: u64,
}

impl CountHistogram {
    pub fn add(&mut self, tp: u64, nu: u64, count: u64) {
        self.total += count;
        if nu == 0 {
            self.nu_zero += count;
        } else {
            *self.counts.entry((tp, nu)).or_insert(0) += count;
        }
    }

    fn merge(&mut self, other: HashMap<(u64, u64), u64>) {
        for ((tp, nu), c) in other {
            self.add(tp, nu, c);
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn nu_zero(&self) -> u64 {
        self.nu_zero
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), u64)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }

    /// The replicates that observed exactly `nu` relevant items.
    pub fn conditional_on_nu(&self, nu: u64) -> CountHistogram {
        let mut out = CountHistogram::default();
        for ((tp, v), c) in self.iter().filter(|((_, v), _)| *v == nu) {
            out.add(tp, v, c);
        }
        out
    }

    /// Evaluates each method on every distinct `(tp, nu)` and aggregates.
    pub fn evaluate(
        &self,
        level: &ConfidenceLevel,
        methods: &[Method],
        true_f1: f64,
    ) -> Result<Vec<MethodMetrics>> {
        let keys: Vec<(u64, u64)> = self.counts.keys().copied().collect();
        let bounds_for = |&(tp, nu): &(u64, u64)| -> Vec<Result<(f64, f64)>> {
            methods.iter().map(|&m| level.bounds(m, tp, nu)).collect()
        };
        #[cfg(feature = "parallel")]
        let bounds: Vec<Vec<Result<(f64, f64)>>> = keys.par_iter().map(bounds_for).collect();
        #[cfg(not(feature = "parallel"))]
        let bounds: Vec<Vec<Result<(f64, f64)>>> = keys.iter().map(bounds_for).collect();

        let mut out = Vec::with_capacity(methods.len());
        for (mi, &method) in methods.iter().enumerate() {
            let mut evaluated = 0u64;
            let mut covered = 0u64;
            let mut overshoot = 0u64;
            let mut degenerate = 0u64;
            let mut skipped_invalid = 0u64;
            let mut length_sum = 0.0f64;
            for (key, per_method) in keys.iter().zip(&bounds) {
                let count = self.counts[key];
                match per_method[mi] {
                    Ok((lower, upper)) => {
                        let iv = ConfidenceInterval {
                            method,
                            alpha: level.alpha(),
                            lower,
                            upper,
                        };
                        let e = evaluate_interval(&iv, true_f1);
                        evaluated += count;
                        covered += count * e.covered as u64;
                        overshoot += count * e.overshoot as u64;
                        degenerate += count * e.degenerate as u64;
                        length_sum += count as f64 * e.length;
                    }
                    Err(Error::WilsonDirectInvalid { .. }) => skipped_invalid += count,
                    Err(ref e) => return Err(e.clone()),
                }
            }
            let denom = evaluated.max(1) as f64;
            let ratio = |x: u64| {
                if evaluated == 0 {
                    f64::NAN
                } else {
                    x as f64 / denom
                }
            };
            out.push(MethodMetrics {
                method,
                evaluated,
                covered,
                coverage: ratio(covered),
                expected_length: if evaluated == 0 {
                    f64::NAN
                } else {
                    length_sum / denom
                },
                overshoot_prob: ratio(overshoot),
                degeneracy_prob: ratio(degenerate),
                skipped_invalid,
            });
        }
        Ok(out)
    }
}

fn build_histogram<F>(replicates: u64, draw: F) -> CountHistogram
where
    F: Fn(u64) -> (u64, u64) + Sync,
{
    let chunks = replicates.div_ceil(CHUNK);
    let chunk_counts = |c: u64| {
        let mut local: HashMap<(u64, u64), u64> = HashMap::new();
        for i in c * CHUNK..((c + 1) * CHUNK).min(replicates) {
            *local.entry(draw(i)).or_insert(0) += 1;
        }
        local
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<_> = (0..chunks).into_par_iter().map(chunk_counts).collect();
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<_> = (0..chunks).map(chunk_counts).collect();

    let mut hist = CountHistogram::default();
    for p in parts {
        hist.merge(p);
    }
    hist
}

/// Draws the `(tp, nu)` histogram for a configuration.
pub fn sample_histogram(cfg: &SimulationConfig) -> CountHistogram {
    let streams = ReplicateStreams::new(cfg.seed);
    let p = cfg.scenario.probs;
    let n = cfg.n;
    build_histogram(cfg.replicates, |i| {
        let c = multinomial_sample(&mut streams.stream(i), n, &p);
        (c.tp, c.nu())
    })
}

/// Monte Carlo metrics for one (scenario, n) condition.
///
/// Replicates with `nu = 0` are excluded from every method and counted in
/// `skipped_nu_zero`; Wilson-direct replicates below its validity bound are
/// excluded from that method only.
pub fn run_condition(cfg: &SimulationConfig) -> Result<ConditionMetrics> {
    cfg.validate()?;
    let level = ConfidenceLevel::new(cfg.alpha)?;
    let hist = sample_histogram(cfg);
    let methods = hist.evaluate(&level, &cfg.methods, cfg.scenario.true_f1)?;
    Ok(ConditionMetrics {
        scenario: cfg.scenario.clone(),
        n: cfg.n,
        alpha: cfg.alpha,
        seed: cfg.seed,
        replicates: cfg.replicates,
        skipped_nu_zero: hist.nu_zero(),
        methods,
    })
}

/// Monte Carlo under the conditional model `tp ~ Binomial(nu, F*)`.
pub fn simulate_conditional(
    nu: u64,
    fstar: f64,
    replicates: u64,
    seed: u64,
) -> Result<CountHistogram> {
    let fstar = check_probability("F*", fstar)?;
    if nu == 0 {
        return Err(Error::UndefinedEstimate);
    }
    let streams = ReplicateStreams::new(seed);
    Ok(build_histogram(replicates, |i| {
        (binomial(&mut streams.stream(i), nu, fstar), nu)
    }))
}

/// Monte Carlo conditional coverage for every method at `(nu, F*)`.
pub fn conditional_monte_carlo(
    nu: u64,
    fstar: f64,
    alpha: f64,
    methods: &[Method],
    replicates: u64,
    seed: u64,
) -> Result<Vec<MethodMetrics>> {
    let level = ConfidenceLevel::new(alpha)?;
    let hist = simulate_conditional(nu, fstar, replicates, seed)?;
    hist.evaluate(&level, methods, f1_from_fstar_unchecked(fstar))
}
