//! Sweep configuration files.
//!
//! A sweep config is TOML with this schema:
//!
//! ```toml
//! alpha = 0.05              # two-sided level, 0 < alpha < 1
//! seed = 20240101           # base seed shared by every condition
//! replicates = 100000       # Monte Carlo replicates per condition
//! n = [25, 50, 100]         # sample sizes
//! methods = ["all"]         # optional; method names or "all"
//!
//! [[scenario]]
//! id = "1"                  # free-form label
//! p = [0.4, 0.1, 0.1, 0.4]  # [tp, fp, fn, tn] cell probabilities
//! ```

use std::fmt;
use std::ops::Range;

use f1ci::simulation::{Scenario, SimulationConfig};
use f1ci::Method;
use serde::Deserialize;
use toml::Spanned;

/// The configuration bundled with the binary: the 18 reference conditions.
pub const DEFAULT_CONFIG: &str = include_str!("../configs/reference_sweep.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    alpha: Spanned<f64>,
    seed: u64,
    replicates: Spanned<u64>,
    n: Spanned<Vec<Spanned<u64>>>,
    #[serde(default)]
    methods: Option<Spanned<Vec<String>>>,
    scenario: Spanned<Vec<RawScenario>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    id: String,
    p: Spanned<Vec<f64>>,
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alpha: f64,
    pub seed: u64,
    pub replicates: u64,
    pub n: Vec<u64>,
    pub methods: Vec<Method>,
    pub scenarios: Vec<Scenario>,
}

/// A config error located at a line of the source text.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn line_of(src: &str, span: Range<usize>) -> usize {
    src[..span.start.min(src.len())].matches('\n').count() + 1
}

fn at(src: &str, span: Range<usize>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: Some(line_of(src, span)),
        message: message.into(),
    }
}

impl SweepConfig {
    pub fn parse(src: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(src).map_err(|e| ConfigError {
            line: e.span().map(|s| line_of(src, s)),
            message: e.message().trim().to_string(),
        })?;

        let alpha = *raw.alpha.get_ref();
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(at(
                src,
                raw.alpha.span(),
                format!("alpha must lie in (0, 1), got {alpha}"),
            ));
        }
        let replicates = *raw.replicates.get_ref();
        if replicates == 0 {
            return Err(at(
                src,
                raw.replicates.span(),
                "replicates must be positive",
            ));
        }
        if raw.n.get_ref().is_empty() {
            return Err(at(
                src,
                raw.n.span(),
                "n must list at least one sample size",
            ));
        }
        let mut n = Vec::with_capacity(raw.n.get_ref().len());
        for v in raw.n.get_ref() {
            if *v.get_ref() == 0 {
                return Err(at(src, v.span(), "sample sizes must be positive"));
            }
            n.push(*v.get_ref());
        }

        let methods = match &raw.methods {
            None => Method::ALL.to_vec(),
            Some(list) => Method::parse_list(&list.get_ref().join(","))
                .map_err(|e| at(src, list.span(), e.to_string()))?,
        };

        if raw.scenario.get_ref().is_empty() {
            return Err(at(
                src,
                raw.scenario.span(),
                "at least one [[scenario]] is required",
            ));
        }
        let mut scenarios = Vec::new();
        for s in raw.scenario.get_ref() {
            let p: [f64; 4] = s.p.get_ref().as_slice().try_into().map_err(|_| {
                at(
                    src,
                    s.p.span(),
                    format!(
                        "scenario `{}`: p needs 4 probabilities [tp, fp, fn, tn]",
                        s.id
                    ),
                )
            })?;
            let scenario = Scenario::new(s.id.clone(), p)
                .map_err(|e| at(src, s.p.span(), format!("scenario `{}`: {e}", s.id)))?;
            scenarios.push(scenario);
        }

        Ok(SweepConfig {
            alpha,
            seed: raw.seed,
            replicates,
            n,
            methods,
            scenarios,
        })
    }

    pub fn bundled() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("bundled config is valid")
    }

    /// Conditions in output order: scenarios outer, sample sizes inner.
    pub fn conditions(&self) -> Vec<SimulationConfig> {
        let mut out = Vec::new();
        for s in &self.scenarios {
            for &n in &self.n {
                let mut cfg =
                    SimulationConfig::new(s.clone(), n, self.replicates, self.alpha, self.seed);
                cfg.methods = self.methods.clone();
                out.push(cfg);
            }
        }
        out
    }
}
