use crate::error::Result;
use crate::score::{true_f1_from_probs, validate_cell_probs};

/// Population cell probabilities `(p11, p10, p01, p00)` = (tp, fp, fn, tn)
/// together with the implied population F1.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub id: String,
    pub probs: [f64; 4],
    pub true_f1: f64,
}

impl Scenario {
    pub fn new(id: impl Into<String>, probs: [f64; 4]) -> Result<Self> {
        validate_cell_probs(probs)?;
        let [p11, p10, p01, p00] = probs;
        Ok(Self {
            id: id.into(),
            probs,
            true_f1: true_f1_from_probs(p11, p10, p01, p00)?,
        })
    }

    /// One of the three built-in scenarios (1-based), if it exists.
    pub fn builtin(id: u32) -> Option<Self> {
        let probs = match id {
            // prevalence 50%, precision 80%, recall 80%
            1 => [0.4, 0.1, 0.1, 0.4],
            // prevalence 80%, precision 80%, recall 80%
            2 => [0.64, 0.16, 0.16, 0.04],
            // prevalence 80%, precision 80%, recall 20%
            3 => [0.16, 0.04, 0.64, 0.16],
            _ => return None,
        };
        Some(Self::new(id.to_string(), probs).expect("built-in scenario is valid"))
    }

    /// Probability that an observation is relevant (`p11 + p10 + p01`).
    pub fn relevant_prob(&self) -> f64 {
        self.probs[0] + self.probs[1] + self.probs[2]
    }

    /// Population F*, the conditional probability of a true positive given
    /// relevance.
    pub fn fstar(&self) -> f64 {
        self.probs[0] / self.relevant_prob()
    }
}

/// Scenarios 1-3 of the reference simulation study.
pub fn builtin_scenarios() -> Vec<Scenario> {
    (1..=3).filter_map(Scenario::builtin).collect()
}
