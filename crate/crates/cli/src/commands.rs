//! The four subcommands as functions from parsed arguments to output records.

use rayon::prelude::*;

use f1ci::simulation::{
    run_condition, sample_histogram, ConditionMetrics, ConditionalEnumerator, SimulationConfig,
};
use f1ci::{estimates_from_counts, ConfidenceLevel, ConfusionCounts, Error, Method};

use crate::config::SweepConfig;
use crate::record::{Record, Value};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config, bad probability vector.
    Usage(String),
    /// Inputs are well-formed but no estimate or interval exists for them.
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Domain(_) => exit::DOMAIN,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn domain(e: Error) -> CliError {
    match e {
        Error::InvalidProbabilities(_) => CliError::Usage(e.to_string()),
        Error::Domain { what: "alpha", .. } => CliError::Usage(e.to_string()),
        other => CliError::Domain(other.to_string()),
    }
}

/// Result of `ci`: one record per method and whether every method failed.
pub struct CiOutput {
    pub records: Vec<Record>,
    pub all_failed: bool,
}

pub fn ci(
    counts: ConfusionCounts,
    tn_given: bool,
    alpha: f64,
    methods: &[Method],
) -> Result<CiOutput, CliError> {
    let level = ConfidenceLevel::new(alpha).map_err(domain)?;
    let est = estimates_from_counts(&counts).map_err(domain)?;
    let mut records = Vec::new();
    let mut failures = 0;
    for &m in methods {
        let base = Record::new()
            .with("method", m.name())
            .with("alpha", alpha)
            .with("tp", counts.tp)
            .with("fp", counts.fp)
            .with("fn", counts.fn_)
            .with(
                "tn",
                if tn_given {
                    counts.tn.into()
                } else {
                    Value::Missing
                },
            )
            .with("nu", est.nu)
            .with("f1_hat", est.f1_hat);
        let rec = match level.interval(m, &counts) {
            Ok(iv) => base
                .with("lower", iv.lower)
                .with("upper", iv.upper)
                .with("length", iv.length())
                .with("overshoot", iv.overshoots())
                .with("degenerate", iv.is_degenerate())
                .with("status", "ok")
                .with("message", ""),
            Err(e) => {
                failures += 1;
                base.with("lower", f64::NAN)
                    .with("upper", f64::NAN)
                    .with("length", f64::NAN)
                    .with("overshoot", Value::Missing)
                    .with("degenerate", Value::Missing)
                    .with("status", "error")
                    .with("message", e.to_string())
            }
        };
        records.push(rec);
    }
    Ok(CiOutput {
        records,
        all_failed: failures == methods.len(),
    })
}

/// One record per method for a simulated condition.
pub fn condition_records(m: &ConditionMetrics) -> Vec<Record> {
    let [p11, p10, p01, p00] = m.scenario.probs;
    m.methods
        .iter()
        .map(|mm| {
            Record::new()
                .with("scenario", m.scenario.id.as_str())
                .with("p11", p11)
                .with("p10", p10)
                .with("p01", p01)
                .with("p00", p00)
                .with("true_f1", m.scenario.true_f1)
                .with("n", m.n)
                .with("method", mm.method.name())
                .with("alpha", m.alpha)
                .with("seed", m.seed)
                .with("replicates", m.replicates)
                .with("evaluated", mm.evaluated)
                .with("coverage", mm.coverage)
                .with("coverage_se", mm.coverage_std_error())
                .with("expected_length", mm.expected_length)
                .with("overshoot_prob", mm.overshoot_prob)
                .with("degeneracy_prob", mm.degeneracy_prob)
                .with("skipped_nu_zero", m.skipped_nu_zero)
                .with("skipped_invalid", mm.skipped_invalid)
        })
        .collect()
}

pub fn simulate(cfg: &SimulationConfig) -> Result<Vec<Record>, CliError> {
    let metrics = run_condition(cfg).map_err(domain)?;
    Ok(condition_records(&metrics))
}

/// The sampled `(tp, nu)` histogram of a condition, one record per distinct
/// pair in ascending order.
pub fn simulate_counts(cfg: &SimulationConfig) -> Result<Vec<Record>, CliError> {
    cfg.validate().map_err(domain)?;
    let hist = sample_histogram(cfg);
    Ok(hist
        .iter()
        .map(|((tp, nu), count)| {
            Record::new()
                .with("scenario", cfg.scenario.id.as_str())
                .with("n", cfg.n)
                .with("tp", tp)
                .with("nu", nu)
                .with("fp_plus_fn", nu - tp)
                .with("tn", cfg.n - nu)
                .with("count", count)
        })
        .collect())
}

/// Every condition of a sweep, scenarios outer and sample sizes inner.
pub fn sweep(config: &SweepConfig) -> Result<Vec<Record>, CliError> {
    let results: Vec<_> = config
        .conditions()
        .par_iter()
        .map(run_condition)
        .collect::<Result<_, _>>()
        .map_err(domain)?;
    Ok(results.iter().flat_map(condition_records).collect())
}

/// Exact conditional coverage at `F* = i / (grid + 1)`, `i = 1..=grid`.
pub fn exact(nu: u64, method: Method, alpha: f64, grid: u64) -> Result<Vec<Record>, CliError> {
    if grid == 0 {
        return Err(CliError::Usage("--grid must be at least 1".into()));
    }
    let enumerator = ConditionalEnumerator::new(nu, method, alpha).map_err(domain)?;
    (1..=grid)
        .map(|i| {
            let fstar = i as f64 / (grid + 1) as f64;
            let c = enumerator.evaluate(fstar).map_err(domain)?;
            Ok(Record::new()
                .with("method", method.name())
                .with("alpha", alpha)
                .with("nu", nu)
                .with("fstar", fstar)
                .with("f1", 2.0 * fstar / (1.0 + fstar))
                .with("coverage", c.coverage)
                .with("expected_length", c.expected_length))
        })
        .collect()
}
