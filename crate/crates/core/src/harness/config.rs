//! Experiment configuration files (TOML).
//!
//! ```toml
//! algorithm = "hs"
//! benchmark = "rosenbrock_log"
//! seeds = [1, 2, 3]
//! budget = { iterations = 15000 }   # or { evaluations = 15020 }
//! trace_detail = "full"             # "summary" (default) or "full"
//! trace_format = "csv"              # "csv" (default) or "jsonl"
//! success_threshold = 0.01          # optional
//! output_dir = "runs"               # optional
//!
//! [params]
//! hms = 20
//! r_accept = 0.95
//! r_pa = 0.7
//! ```
//!
//! The iteration field of `[params]` (`max_iterations` or
//! `max_generations`) is always derived from `budget`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::baselines::{FaParams, Firefly, GaParams, GeneticAlgorithm, ParticleSwarm, PsoParams, SaParams, SimulatedAnnealing};
use crate::benchmarks::{self, BenchmarkSpec};
use crate::error::{Error, Result};
use crate::hs::{HarmonySearch, HsParams};
use crate::objective::Objective;
use crate::run::{Algorithm, Optimizer};

/// Evaluation or iteration allowance of a single run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Budget {
    /// Objective evaluations. Population methods round down to whole
    /// iterations, so a run may use slightly fewer.
    Evaluations(u64),
    /// Algorithm iterations (generations for GA).
    Iterations(u64),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceDetail {
    #[default]
    Summary,
    Full,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceFormat {
    #[default]
    Csv,
    Jsonl,
}

impl TraceFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TraceFormat::Csv => "csv",
            TraceFormat::Jsonl => "jsonl",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmParams {
    Hs(HsParams),
    Sa(SaParams),
    Ga(GaParams),
    Pso(PsoParams),
    Fa(FaParams),
}

impl AlgorithmParams {
    pub fn default_for(algorithm: Algorithm) -> Self {
        match algorithm {
            Algorithm::Hs => AlgorithmParams::Hs(HsParams::default()),
            Algorithm::Sa => AlgorithmParams::Sa(SaParams::default()),
            Algorithm::Ga => AlgorithmParams::Ga(GaParams::default()),
            Algorithm::Pso => AlgorithmParams::Pso(PsoParams::default()),
            Algorithm::Fa => AlgorithmParams::Fa(FaParams::default()),
        }
    }

    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgorithmParams::Hs(_) => Algorithm::Hs,
            AlgorithmParams::Sa(_) => Algorithm::Sa,
            AlgorithmParams::Ga(_) => Algorithm::Ga,
            AlgorithmParams::Pso(_) => Algorithm::Pso,
            AlgorithmParams::Fa(_) => Algorithm::Fa,
        }
    }

    fn from_table(algorithm: Algorithm, table: toml::Table) -> Result<Self> {
        let value = toml::Value::Table(table);
        let bad = |e: toml::de::Error| Error::Config(format!("[params] for {algorithm}: {e}"));
        Ok(match algorithm {
            Algorithm::Hs => AlgorithmParams::Hs(value.try_into().map_err(bad)?),
            Algorithm::Sa => AlgorithmParams::Sa(value.try_into().map_err(bad)?),
            Algorithm::Ga => AlgorithmParams::Ga(value.try_into().map_err(bad)?),
            Algorithm::Pso => AlgorithmParams::Pso(value.try_into().map_err(bad)?),
            Algorithm::Fa => AlgorithmParams::Fa(value.try_into().map_err(bad)?),
        })
    }

    fn to_table(&self) -> toml::Table {
        let value = match self {
            AlgorithmParams::Hs(p) => toml::Table::try_from(p),
            AlgorithmParams::Sa(p) => toml::Table::try_from(p),
            AlgorithmParams::Ga(p) => toml::Table::try_from(p),
            AlgorithmParams::Pso(p) => toml::Table::try_from(p),
            AlgorithmParams::Fa(p) => toml::Table::try_from(p),
        };
        value.expect("parameter structs serialize to tables")
    }

    /// Sets the iteration count implied by `budget`.
    fn apply_budget(&mut self, budget: Budget) -> Result<()> {
        let algorithm = self.algorithm();
        let too_small = |needed: u64| {
            Error::Config(format!(
                "budget of {budget:?} is below the {needed} evaluations needed to initialize {algorithm}"
            ))
        };
        match (self, budget) {
            (AlgorithmParams::Hs(p), Budget::Iterations(n)) => p.max_iterations = n,
            (AlgorithmParams::Hs(p), Budget::Evaluations(n)) => {
                let init = p.hms as u64;
                p.max_iterations = n.checked_sub(init).ok_or_else(|| too_small(init))?;
            }
            (AlgorithmParams::Sa(p), Budget::Iterations(n)) => p.max_iterations = n,
            (AlgorithmParams::Sa(p), Budget::Evaluations(n)) => {
                p.max_iterations = n.checked_sub(1).ok_or_else(|| too_small(1))?;
            }
            (AlgorithmParams::Ga(p), Budget::Iterations(n)) => p.max_generations = n,
            (AlgorithmParams::Ga(p), Budget::Evaluations(n)) => {
                let init = p.pop_size as u64;
                let per_generation = p.pop_size.saturating_sub(p.elite_count).max(1) as u64;
                p.max_generations = n.checked_sub(init).ok_or_else(|| too_small(init))? / per_generation;
            }
            (AlgorithmParams::Pso(p), Budget::Iterations(n)) => p.max_iterations = n,
            (AlgorithmParams::Pso(p), Budget::Evaluations(n)) => {
                let swarm = p.swarm_size.max(1) as u64;
                p.max_iterations = (n / swarm).checked_sub(1).ok_or_else(|| too_small(swarm))?;
            }
            (AlgorithmParams::Fa(p), Budget::Iterations(n)) => p.max_iterations = n,
            (AlgorithmParams::Fa(p), Budget::Evaluations(n)) => {
                let pop = p.pop_size.max(1) as u64;
                p.max_iterations = (n / pop).checked_sub(1).ok_or_else(|| too_small(pop))?;
            }
        }
        Ok(())
    }

    /// Checks parameter validity against the benchmark's bounds.
    fn validate(&self, bounds: &crate::Bounds) -> Result<()> {
        match self {
            AlgorithmParams::Hs(p) => p.resolve_bandwidth(bounds).map(drop),
            AlgorithmParams::Sa(p) => p.materialized(bounds).map(drop),
            AlgorithmParams::Ga(p) => p.materialized(bounds).map(drop),
            AlgorithmParams::Pso(p) => p.validate(),
            AlgorithmParams::Fa(p) => p.validate(),
        }
    }

    pub fn optimizer(&self) -> Box<dyn Optimizer + Send + Sync> {
        match self {
            AlgorithmParams::Hs(p) => Box::new(HarmonySearch::new(p.clone())),
            AlgorithmParams::Sa(p) => Box::new(SimulatedAnnealing::new(p.clone())),
            AlgorithmParams::Ga(p) => Box::new(GeneticAlgorithm::new(p.clone())),
            AlgorithmParams::Pso(p) => Box::new(ParticleSwarm::new(p.clone())),
            AlgorithmParams::Fa(p) => Box::new(Firefly::new(p.clone())),
        }
    }
}

/// A validated, fully seeded experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub benchmark: String,
    pub params: AlgorithmParams,
    pub seeds: Vec<u64>,
    pub budget: Budget,
    pub output_dir: Option<PathBuf>,
    pub trace_detail: TraceDetail,
    pub trace_format: TraceFormat,
    pub success_threshold: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    algorithm: Algorithm,
    benchmark: String,
    seeds: Vec<u64>,
    budget: Budget,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output_dir: Option<PathBuf>,
    #[serde(default)]
    trace_detail: TraceDetail,
    #[serde(default)]
    trace_format: TraceFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    success_threshold: Option<f64>,
    #[serde(default)]
    params: toml::Table,
}

impl RunConfig {
    /// A config with default parameters for `algorithm`.
    pub fn new(algorithm: Algorithm, benchmark: &str, seeds: Vec<u64>, budget: Budget) -> Result<Self> {
        RunConfig {
            benchmark: benchmark.to_string(),
            params: AlgorithmParams::default_for(algorithm),
            seeds,
            budget,
            output_dir: None,
            trace_detail: TraceDetail::default(),
            trace_format: TraceFormat::default(),
            success_threshold: None,
        }
        .validated()
    }

    pub fn with_params(mut self, params: AlgorithmParams) -> Result<Self> {
        self.params = params;
        self.validated()
    }

    /// Applies the budget to the parameters and checks every invariant.
    pub fn validated(mut self) -> Result<Self> {
        if self.seeds.is_empty() {
            return Err(Error::Config("seeds must not be empty".into()));
        }
        let spec = benchmarks::lookup(&self.benchmark)?;
        self.params.apply_budget(self.budget)?;
        self.params.validate(spec.bounds())?;
        if let Some(t) = self.success_threshold {
            if !t.is_finite() {
                return Err(Error::Config(format!("success_threshold must be finite, got {t}")));
            }
        }
        Ok(self)
    }

    pub fn algorithm(&self) -> Algorithm {
        self.params.algorithm()
    }

    pub fn benchmark_spec(&self) -> Result<&'static BenchmarkSpec> {
        benchmarks::lookup(&self.benchmark)
    }

    /// Upper bound on objective evaluations per run.
    pub fn evaluation_ceiling(&self) -> u64 {
        match self.budget {
            Budget::Evaluations(n) => n,
            Budget::Iterations(_) => self.params.optimizer().evaluations(),
        }
    }

    /// Explicit threshold, else the benchmark's known optimum plus 0.01.
    pub fn effective_success_threshold(&self) -> Option<f64> {
        self.success_threshold.or_else(|| {
            self.benchmark_spec()
                .ok()
                .and_then(|b| b.known_optimum_value())
                .map(|v| v + DEFAULT_SUCCESS_MARGIN)
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let params = AlgorithmParams::from_table(raw.algorithm, raw.params)?;
        RunConfig {
            benchmark: raw.benchmark,
            params,
            seeds: raw.seeds,
            budget: raw.budget,
            output_dir: raw.output_dir,
            trace_detail: raw.trace_detail,
            trace_format: raw.trace_format,
            success_threshold: raw.success_threshold,
        }
        .validated()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RunConfig::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Fails only for seeds above `i64::MAX`, which TOML cannot represent.
    pub fn to_toml_string(&self) -> Result<String> {
        let raw = RawConfig {
            algorithm: self.algorithm(),
            benchmark: self.benchmark.clone(),
            seeds: self.seeds.clone(),
            budget: self.budget,
            output_dir: self.output_dir.clone(),
            trace_detail: self.trace_detail,
            trace_format: self.trace_format,
            success_threshold: self.success_threshold,
            params: self.params.to_table(),
        };
        toml::to_string(&raw).map_err(|e| Error::Config(e.to_string()))
    }
}

pub const DEFAULT_SUCCESS_MARGIN: f64 = 1e-2;
