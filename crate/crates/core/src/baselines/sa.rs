//! Simulated annealing with geometric cooling.

use serde::{Deserialize, Serialize};

use super::resolve_scale;
use crate::domain::{uniform_point, SolutionVector};
use crate::error::{Error, Result};
use crate::objective::{Evaluator, Objective};
use crate::rng::RngStream;
use crate::run::{Algorithm, Optimizer, RunOutcome, RunResult};
use crate::trace::TraceRecorder;

pub const DEFAULT_STEP_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SaParams {
    /// Initial temperature.
    pub t0: f64,
    /// Geometric cooling factor in (0, 1).
    pub alpha: f64,
    /// Boltzmann constant.
    pub k: f64,
    /// Gaussian proposal scale per dimension; defaults to a tenth of each width.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_size: Option<Vec<f64>>,
    pub max_iterations: u64,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams {
            t0: 1.0,
            alpha: 0.9995,
            k: 1.0,
            step_size: None,
            max_iterations: 20_000,
        }
    }
}

impl SaParams {
    pub fn materialized(&self, bounds: &crate::Bounds) -> Result<SaParams> {
        if !(self.t0.is_finite() && self.t0 > 0.0) {
            return Err(Error::param("t0", format!("must be > 0, got {}", self.t0)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::param("alpha", format!("must lie in (0, 1), got {}", self.alpha)));
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(Error::param("k", format!("must be > 0, got {}", self.k)));
        }
        Ok(SaParams {
            step_size: Some(resolve_scale("step_size", &self.step_size, DEFAULT_STEP_FRACTION, bounds)?),
            ..self.clone()
        })
    }
}

/// Metropolis acceptance probability `exp(-delta_e / (k T))`, or 1 for
/// non-worsening moves.
pub fn sa_accept_probability(delta_e: f64, temperature: f64, k: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::param("temperature", format!("must be > 0, got {temperature}")));
    }
    if !(k > 0.0) {
        return Err(Error::param("k", format!("must be > 0, got {k}")));
    }
    if delta_e <= 0.0 {
        return Ok(1.0);
    }
    Ok((-delta_e / (k * temperature)).exp().min(1.0))
}

/// Metropolis decision: always accept non-worsening moves, otherwise accept
/// with probability [`sa_accept_probability`]. Draws from `rng` only for
/// worsening moves.
pub fn metropolis_accept(delta_e: f64, temperature: f64, k: f64, rng: &mut RngStream) -> Result<bool> {
    if delta_e <= 0.0 {
        return Ok(true);
    }
    Ok(rng.unit() < sa_accept_probability(delta_e, temperature, k)?)
}

/// `t0 * alpha^t`, floored at the smallest positive normal double so the
/// temperature never reaches zero.
pub fn geometric_cooling(t0: f64, alpha: f64, t: u64) -> f64 {
    (t0 * alpha.powf(t as f64)).max(f64::MIN_POSITIVE)
}

#[derive(Debug, Clone, Default)]
pub struct SimulatedAnnealing {
    pub params: SaParams,
}

impl SimulatedAnnealing {
    pub fn new(params: SaParams) -> Self {
        SimulatedAnnealing { params }
    }
}

impl Optimizer for SimulatedAnnealing {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Sa
    }

    fn evaluations(&self) -> u64 {
        1 + self.params.max_iterations
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> Result<RunOutcome> {
        let start = std::time::Instant::now();
        let bounds = objective.bounds();
        let params = self.params.materialized(bounds)?;
        let step = params.step_size.as_deref().expect("materialized");
        let mut rng = RngStream::new(seed);
        let mut evaluator = Evaluator::with_limit(objective, self.evaluations());

        let mut current = evaluator.evaluate(uniform_point(bounds, &mut rng))?;
        let mut recorder = TraceRecorder::new(current.clone());
        recorder.push(0, evaluator.count(), current.point(), true);

        for t in 1..=params.max_iterations {
            let temperature = geometric_cooling(params.t0, params.alpha, t - 1);
            let proposal: Vec<f64> = current
                .point()
                .iter()
                .enumerate()
                .map(|(i, &x)| bounds.clamp_component(i, x + step[i] * rng.normal()))
                .collect();
            let candidate = evaluator.evaluate(SolutionVector::from_clamped(proposal))?;
            recorder.observe(&candidate);
            let delta_e = candidate.value() - current.value();
            let accepted = metropolis_accept(delta_e, temperature, params.k, &mut rng)?;
            recorder.push(t, evaluator.count(), candidate.point(), accepted);
            if accepted {
                current = candidate;
            }
        }

        let (best, trace) = recorder.finish();
        Ok(RunOutcome {
            result: RunResult {
                algorithm: Algorithm::Sa,
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks;
    use crate::trace::validate_trace;

    #[test]
    fn acceptance_examples() {
        assert_eq!(sa_accept_probability(0.0, 3.0, 1.0).unwrap(), 1.0);
        let p = sa_accept_probability(2.5, 2.5, 1.0).unwrap();
        assert!((p - (-1.0f64).exp()).abs() < 1e-15);
        assert!((p - 0.367879).abs() < 1e-6);
        assert_eq!(sa_accept_probability(-5.0, 1.0, 1.0).unwrap(), 1.0);
        assert!(sa_accept_probability(1.0, 0.0, 1.0).is_err());
        assert!(sa_accept_probability(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn cooling_examples() {
        assert_eq!(geometric_cooling(100.0, 0.9, 0), 100.0);
        assert!((geometric_cooling(100.0, 0.9, 2) - 81.0).abs() < 1e-12);
        for t in 0..5_000 {
            let (a, b) = (geometric_cooling(100.0, 0.9, t), geometric_cooling(100.0, 0.9, t + 1));
            assert!(b > 0.0);
            if a > 1e-300 {
                assert!(b < a, "t={t}");
            }
        }
    }

    #[test]
    fn hot_chain_accepts_nearly_everything() {
        let obj = benchmarks::rosenbrock_log_spec();
        let sa = SimulatedAnnealing::new(SaParams {
            t0: 1e12,
            alpha: 0.999_999,
            max_iterations: 2_000,
            ..Default::default()
        });
        let out = sa.run(&obj, 3).unwrap();
        let accepted = out.trace[1..].iter().filter(|r| r.accepted).count();
        assert!(accepted >= 1_990, "{accepted}");
    }

    #[test]
    fn cold_chain_is_greedy() {
        let obj = benchmarks::rosenbrock_log_spec();
        let sa = SimulatedAnnealing::new(SaParams {
            t0: 1e-300,
            alpha: 0.5,
            max_iterations: 2_000,
            ..Default::default()
        });
        let out = sa.run(&obj, 3).unwrap();
        let mut current = out.trace[0].best_value;
        for r in &out.trace[1..] {
            if r.accepted {
                let v = obj.evaluate(&r.candidate_point);
                assert!(v <= current);
                current = v;
            }
        }
    }

    #[test]
    fn run_accounting_and_monotone_best() {
        let obj = benchmarks::sphere_spec();
        let sa = SimulatedAnnealing::new(SaParams { max_iterations: 5_000, ..Default::default() });
        let out = sa.run(&obj, 9).unwrap();
        assert_eq!(out.result.eval_count, 5_001);
        assert_eq!(out.trace.len(), 5_001);
        validate_trace(&out.trace).unwrap();
        assert_eq!(out.result.params_echo["step_size"][0].as_f64().unwrap(), 2.0);
    }

    #[test]
    fn rejects_bad_params() {
        let b = crate::Bounds::cube(1, 0.0, 1.0).unwrap();
        assert!(SaParams { alpha: 1.0, ..Default::default() }.materialized(&b).is_err());
        assert!(SaParams { t0: 0.0, ..Default::default() }.materialized(&b).is_err());
        assert!(SaParams { k: -1.0, ..Default::default() }.materialized(&b).is_err());
        assert!(SaParams { step_size: Some(vec![0.0]), ..Default::default() }.materialized(&b).is_err());
    }
}
