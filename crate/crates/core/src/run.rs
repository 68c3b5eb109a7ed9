use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::EvaluatedSolution;
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::trace::TraceRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fa,
    Ga,
    Hs,
    Pso,
    Sa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Fa,
        Algorithm::Ga,
        Algorithm::Hs,
        Algorithm::Pso,
        Algorithm::Sa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Fa => "fa",
            Algorithm::Ga => "ga",
            Algorithm::Hs => "hs",
            Algorithm::Pso => "pso",
            Algorithm::Sa => "sa",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// The reproducible outcome of one seeded run.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub objective: String,
    pub seed: u64,
    pub best: EvaluatedSolution,
    pub eval_count: u64,
    pub wall_time_ms: u64,
    /// Parameters with every default materialized.
    pub params_echo: serde_json::Value,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub result: RunResult,
    pub trace: Vec<TraceRecord>,
}

/// Common interface of every optimizer in the crate.
pub trait Optimizer {
    fn algorithm(&self) -> Algorithm;

    /// Exact number of objective evaluations a run will perform.
    fn evaluations(&self) -> u64;

    fn run(&self, objective: &dyn Objective, seed: u64) -> Result<RunOutcome>;
}
