use crate::domain::{Bounds, EvaluatedSolution, SolutionVector};
use crate::error::{Error, Result};

/// A deterministic, box-bounded objective to be minimized.
pub trait Objective: Send + Sync {
    fn name(&self) -> &str;

    fn bounds(&self) -> &Bounds;

    /// Must be pure: identical input yields bit-identical output.
    fn evaluate(&self, point: &[f64]) -> f64;

    fn dims(&self) -> usize {
        self.bounds().dims()
    }
}

/// Wraps a closure as an [`Objective`].
pub struct FnObjective<F> {
    name: String,
    bounds: Bounds,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    pub fn new(name: impl Into<String>, bounds: Bounds, f: F) -> Self {
        FnObjective {
            name: name.into(),
            bounds,
            f,
        }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, point: &[f64]) -> f64 {
        (self.f)(point)
    }
}

/// Counts objective calls and enforces an optional evaluation ceiling.
///
/// Every optimizer routes all evaluations through one of these, so the
/// reported `eval_count` is exactly the number of objective calls.
pub struct Evaluator<'a> {
    objective: &'a dyn Objective,
    count: u64,
    limit: Option<u64>,
}

impl<'a> Evaluator<'a> {
    pub fn new(objective: &'a dyn Objective) -> Self {
        Evaluator {
            objective,
            count: 0,
            limit: None,
        }
    }

    pub fn with_limit(objective: &'a dyn Objective, limit: u64) -> Self {
        Evaluator {
            objective,
            count: 0,
            limit: Some(limit),
        }
    }

    pub fn objective(&self) -> &'a dyn Objective {
        self.objective
    }

    pub fn bounds(&self) -> &'a Bounds {
        self.objective.bounds()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn evaluate(&mut self, point: SolutionVector) -> Result<EvaluatedSolution> {
        self.objective.bounds().check_dims(point.len())?;
        if let Some(limit) = self.limit {
            if self.count >= limit {
                return Err(Error::BudgetExhausted { limit });
            }
        }
        self.count += 1;
        let value = self.objective.evaluate(&point);
        if value.is_nan() {
            return Err(Error::ObjectiveNotFinite {
                point: point.into_inner(),
                value,
            });
        }
        Ok(EvaluatedSolution::new_unchecked(point, value))
    }
}
