//! Per-iteration run history.

use serde::Serialize;

use crate::domain::{EvaluatedSolution, SolutionVector};

/// Snapshot taken after one iteration of an optimizer.
///
/// `candidate_point` is the solution proposed during that iteration; for
/// population methods it is the best member produced by the iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub iteration: u64,
    pub eval_count: u64,
    pub best_value: f64,
    pub best_point: SolutionVector,
    pub candidate_point: SolutionVector,
    pub accepted: bool,
}

/// Builds a trace while tracking the best solution ever evaluated.
#[derive(Debug)]
pub struct TraceRecorder {
    best: EvaluatedSolution,
    records: Vec<TraceRecord>,
}

impl TraceRecorder {
    pub fn new(initial_best: EvaluatedSolution) -> Self {
        TraceRecorder {
            best: initial_best,
            records: Vec::new(),
        }
    }

    pub fn best(&self) -> &EvaluatedSolution {
        &self.best
    }

    /// Offers a solution as best-so-far. Returns true if it strictly improved.
    pub fn observe(&mut self, candidate: &EvaluatedSolution) -> bool {
        if candidate.value() < self.best.value() {
            self.best = candidate.clone();
            true
        } else {
            false
        }
    }

    pub fn push(&mut self, iteration: u64, eval_count: u64, candidate: &SolutionVector, accepted: bool) {
        self.records.push(TraceRecord {
            iteration,
            eval_count,
            best_value: self.best.value(),
            best_point: self.best.point().clone(),
            candidate_point: candidate.clone(),
            accepted,
        });
    }

    pub fn finish(self) -> (EvaluatedSolution, Vec<TraceRecord>) {
        (self.best, self.records)
    }
}

/// Checks the trace invariants: best value never increases and evaluation
/// counts strictly increase.
pub fn validate_trace(trace: &[TraceRecord]) -> Result<(), String> {
    for (i, pair) in trace.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if b.best_value > a.best_value {
            return Err(format!(
                "best_value increased at record {}: {} -> {}",
                i + 1,
                a.best_value,
                b.best_value
            ));
        }
        if b.eval_count <= a.eval_count {
            return Err(format!(
                "eval_count not increasing at record {}: {} -> {}",
                i + 1,
                a.eval_count,
                b.eval_count
            ));
        }
    }
    Ok(())
}
