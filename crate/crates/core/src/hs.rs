//! Harmony Search.
//!
//! Each new harmony is built one decision variable at a time. With
//! probability `r_accept` the component is copied from a uniformly chosen
//! memory member, and that copy is then pitch-adjusted with probability
//! `r_pa` by `b_range[i] * eps`, `eps ~ U[-1, 1]`. Otherwise the component is
//! drawn uniformly from its interval. The improvised harmony replaces the
//! worst memory member only when strictly better.
//!
//! ```text
//! P(random)      = 1 - r_accept
//! P(pitch)       = r_accept * r_pa
//! P(memory only) = r_accept * (1 - r_pa)
//! ```

use serde::{Deserialize, Serialize};

use crate::domain::{uniform_point, Bounds, EvaluatedSolution, SolutionVector};
use crate::error::{Error, Result};
use crate::objective::{Evaluator, Objective};
use crate::rng::RngStream;
use crate::run::{Algorithm, Optimizer, RunOutcome, RunResult};
use crate::trace::TraceRecorder;

/// Default bandwidth as a fraction of each dimension's width.
pub const DEFAULT_BANDWIDTH_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HsParams {
    /// Harmony memory size.
    pub hms: usize,
    /// Memory considering rate.
    pub r_accept: f64,
    /// Pitch adjusting rate.
    pub r_pa: f64,
    /// Pitch bandwidth per dimension, in problem units. `None` selects
    /// [`DEFAULT_BANDWIDTH_FRACTION`] of each dimension's width.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_range: Option<Vec<f64>>,
    pub max_iterations: u64,
}

impl Default for HsParams {
    fn default() -> Self {
        HsParams {
            hms: 20,
            r_accept: 0.95,
            r_pa: 0.7,
            b_range: None,
            max_iterations: 15_000,
        }
    }
}

impl HsParams {
    /// Validates the parameters against `bounds` and returns the bandwidth
    /// vector actually used.
    pub fn resolve_bandwidth(&self, bounds: &Bounds) -> Result<Vec<f64>> {
        if self.hms < 2 {
            return Err(Error::param("hms", format!("must be >= 2, got {}", self.hms)));
        }
        if !(0.0..=1.0).contains(&self.r_accept) {
            return Err(Error::param("r_accept", format!("must lie in [0, 1], got {}", self.r_accept)));
        }
        if !(0.0..=1.0).contains(&self.r_pa) {
            return Err(Error::param("r_pa", format!("must lie in [0, 1], got {}", self.r_pa)));
        }
        match &self.b_range {
            None => Ok(bounds.scaled_widths(DEFAULT_BANDWIDTH_FRACTION)),
            Some(b) => {
                bounds.check_dims(b.len())?;
                if let Some(bad) = b.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(Error::param("b_range", format!("entries must be finite and > 0, got {bad}")));
                }
                Ok(b.clone())
            }
        }
    }

    /// Copy of these parameters with the bandwidth filled in.
    pub fn materialized(&self, bounds: &Bounds) -> Result<HsParams> {
        Ok(HsParams {
            b_range: Some(self.resolve_bandwidth(bounds)?),
            ..self.clone()
        })
    }
}

/// Probabilities of the three improvisation branches for one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchProbabilities {
    pub memory_only: f64,
    pub pitch: f64,
    pub random: f64,
}

pub fn branch_probabilities(r_accept: f64, r_pa: f64) -> BranchProbabilities {
    BranchProbabilities {
        memory_only: r_accept * (1.0 - r_pa),
        pitch: r_accept * r_pa,
        random: 1.0 - r_accept,
    }
}

/// Linear pitch adjustment `x_old + bandwidth * eps`. Clamping is left to the caller.
#[inline]
pub fn pitch_adjust(x_old: f64, bandwidth: f64, eps: f64) -> f64 {
    x_old + bandwidth * eps
}

/// Which rule produced a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    MemoryOnly,
    PitchAdjusted,
    Random,
}

/// Fixed-size pool of evaluated harmonies with tracked best and worst.
#[derive(Debug, Clone)]
pub struct HarmonyMemory {
    members: Vec<EvaluatedSolution>,
    worst_index: usize,
    best_index: usize,
}

impl HarmonyMemory {
    /// Fills a memory with `hms` uniform points, each evaluated once.
    pub fn init(evaluator: &mut Evaluator<'_>, hms: usize, rng: &mut RngStream) -> Result<Self> {
        if hms < 2 {
            return Err(Error::param("hms", format!("must be >= 2, got {hms}")));
        }
        let bounds = evaluator.bounds();
        let members = (0..hms)
            .map(|_| evaluator.evaluate(uniform_point(bounds, rng)))
            .collect::<Result<Vec<_>>>()?;
        Ok(HarmonyMemory::from_members(members))
    }

    /// Builds a memory from already-evaluated harmonies. Panics if empty.
    pub fn from_members(members: Vec<EvaluatedSolution>) -> Self {
        assert!(!members.is_empty(), "harmony memory cannot be empty");
        let mut hm = HarmonyMemory {
            members,
            worst_index: 0,
            best_index: 0,
        };
        hm.reindex();
        hm
    }

    fn reindex(&mut self) {
        let (mut best, mut worst) = (0, 0);
        for (i, m) in self.members.iter().enumerate() {
            if m.value() < self.members[best].value() {
                best = i;
            }
            if m.value() > self.members[worst].value() {
                worst = i;
            }
        }
        self.best_index = best;
        self.worst_index = worst;
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[EvaluatedSolution] {
        &self.members
    }

    pub fn best_index(&self) -> usize {
        self.best_index
    }

    pub fn worst_index(&self) -> usize {
        self.worst_index
    }

    pub fn best(&self) -> &EvaluatedSolution {
        &self.members[self.best_index]
    }

    pub fn worst(&self) -> &EvaluatedSolution {
        &self.members[self.worst_index]
    }

    /// Replaces the worst member if `candidate` is strictly better.
    /// Returns whether the candidate entered the memory.
    pub fn accept(&mut self, candidate: EvaluatedSolution) -> bool {
        if candidate.value() < self.worst().value() {
            self.members[self.worst_index] = candidate;
            self.reindex();
            true
        } else {
            false
        }
    }

    /// Builds component `i` of a new harmony.
    pub fn improvise_component(
        &self,
        i: usize,
        params: &HsParams,
        bandwidth: &[f64],
        bounds: &Bounds,
        rng: &mut RngStream,
    ) -> (f64, Branch) {
        if rng.unit() < params.r_accept {
            let source = rng.index(self.members.len());
            let x_old = self.members[source].point()[i];
            if rng.unit() < params.r_pa {
                let eps = rng.symmetric();
                let x_new = pitch_adjust(x_old, bandwidth[i], eps);
                (bounds.clamp_component(i, x_new), Branch::PitchAdjusted)
            } else {
                (x_old, Branch::MemoryOnly)
            }
        } else {
            (rng.uniform(bounds.lower()[i], bounds.upper()[i]), Branch::Random)
        }
    }

    /// Improvises a full harmony, branching independently per variable.
    pub fn improvise(
        &self,
        params: &HsParams,
        bandwidth: &[f64],
        bounds: &Bounds,
        rng: &mut RngStream,
    ) -> SolutionVector {
        let components = (0..bounds.dims())
            .map(|i| self.improvise_component(i, params, bandwidth, bounds, rng).0)
            .collect();
        SolutionVector::from_clamped(components)
    }
}

#[derive(Debug, Clone, Default)]
pub struct HarmonySearch {
    pub params: HsParams,
}

impl HarmonySearch {
    pub fn new(params: HsParams) -> Self {
        HarmonySearch { params }
    }
}

impl Optimizer for HarmonySearch {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Hs
    }

    fn evaluations(&self) -> u64 {
        self.params.hms as u64 + self.params.max_iterations
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> Result<RunOutcome> {
        let start = std::time::Instant::now();
        let bounds = objective.bounds();
        let params = self.params.materialized(bounds)?;
        let bandwidth = params.b_range.as_deref().expect("materialized");
        let mut rng = RngStream::new(seed);
        let mut evaluator = Evaluator::with_limit(objective, self.evaluations());

        let mut memory = HarmonyMemory::init(&mut evaluator, params.hms, &mut rng)?;
        let mut recorder = TraceRecorder::new(memory.best().clone());
        recorder.push(0, evaluator.count(), memory.best().point(), true);

        for iteration in 1..=params.max_iterations {
            let point = memory.improvise(&params, bandwidth, bounds, &mut rng);
            let candidate = evaluator.evaluate(point)?;
            recorder.observe(&candidate);
            let point = candidate.point().clone();
            let accepted = memory.accept(candidate);
            recorder.push(iteration, evaluator.count(), &point, accepted);
        }

        let (best, trace) = recorder.finish();
        Ok(RunOutcome {
            result: RunResult {
                algorithm: Algorithm::Hs,
                objective: objective.name().to_string(),
                seed,
                best,
                eval_count: evaluator.count(),
                wall_time_ms: start.elapsed().as_millis() as u64,
                params_echo: serde_json::to_value(&params).expect("params serialize"),
            },
            trace,
        })
    }
}
