//! Particle swarm optimization in its original form: no inertia weight or
//! constriction, attraction toward the global and personal bests.
//!
//! ```text
//! v' = v + alpha * e1 * (g - x) + beta * e2 * (p - x)
//! x' = x + v'
//! ```

use serde::{Deserialize, Serialize};

use super::check_non_negative;
use crate::domain::{uniform_point, Bounds, EvaluatedSolution, SolutionVector};
use crate::error::{Error, Result};
use crate::objective::{Evaluator, Objective};
use crate::rng::RngStream;
use crate::run::{Algorithm, Optimizer, RunOutcome, RunResult};
use crate::trace::TraceRecorder;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PsoParams {
    pub swarm_size: usize,
    /// Global-best learning parameter.
    pub alpha: f64,
    /// Personal-best learning parameter.
    pub beta: f64,
    pub max_iterations: u64,
}

impl Default for PsoParams {
    fn default() -> Self {
        PsoParams {
            swarm_size: 20,
            alpha: 0.2,
            beta: 0.2,
            max_iterations: 1_000,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 1 {
            return Err(Error::param("swarm_size", "must be >= 1"));
        }
        check_non_negative("alpha", self.alpha)?;
        check_non_negative("beta", self.beta)
    }
}

/// One velocity/position update for a single particle. `e1` and `e2` are
/// drawn fresh per component from `U[0, 1]`; the new position is clamped.
pub fn pso_update(
    position: &[f64],
    velocity: &[f64],
    personal_best: &[f64],
    global_best: &[f64],
    params: &PsoParams,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> (Vec<f64>, Vec<f64>) {
    let d = position.len();
    let mut new_position = Vec::with_capacity(d);
    let mut new_velocity = Vec::with_capacity(d);
    for i in 0..d {
        let e1 = rng.unit();
        let e2 = rng.unit();
        let v = velocity[i]
            + params.alpha * e1 * (global_best[i] - position[i])
            + params.beta * e2 * (personal_best[i] - position[i]);
        new_velocity.push(v);
        new_position.push(bounds.clamp_component(i, position[i] + v));
    }
    (new_position, new_velocity)
}

#[derive(Debug, Clone, Default)]
pub struct ParticleSwarm {
    pub params: PsoParams,
}

impl ParticleSwarm {
    pub fn new(params: PsoParams) -> Self {
        ParticleSwarm { params }
    }
}

struct Particle {
    position: EvaluatedSolution,
    velocity: Vec<f64>,
    personal_best: EvaluatedSolution,
}

impl Optimizer for ParticleSwarm {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Pso
    }

    fn evaluations(&self) -> u64 {
        self.params.swarm_size as u64 * (1 + self.params.max_iterations)
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> Result<RunOutcome> {
        let start = std::time::Instant::now();
        let params = &self.params;
        params.validate()?;
        let bounds = objective.bounds();
        let mut rng = RngStream::new(seed);
        let mut evaluator = Evaluator::with_limit(objective, self.evaluations());

        let mut swarm = (0..params.swarm_size)
            .map(|_| {
                let position = evaluator.evaluate(uniform_point(bounds, &mut rng))?;
                Ok(Particle {
                    velocity: vec![0.0; bounds.dims()],
                    personal_best: position.clone(),
                    position,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut global_best = swarm[0].position.clone();
        for p in &swarm[1..] {
            if p.position.value() < global_best.value() {
                global_best = p.position.clone();
            }
        }
        let mut recorder = TraceRecorder::new(global_best.clone());
        recorder.push(0, evaluator.count(), global_best.point(), true);

        for iteration in 1..=params.max_iterations {
            let mut iteration_best: Option<EvaluatedSolution> = None;
            for particle in swarm.iter_mut() {
                let (x, v) = pso_update(
                    particle.position.point(),
                    &particle.velocity,
                    particle.personal_best.point(),
                    global_best.point(),
                    params,
                    bounds,
                    &mut rng,
                );
                particle.velocity = v;
                particle.position = evaluator.evaluate(SolutionVector::from_clamped(x))?;
                if particle.position.value() < particle.personal_best.value() {
                    particle.personal_best = particle.position.clone();
                }
                if iteration_best
                    .as_ref()
                    .map_or(true, |b| particle.position.value() < b.value())
                {
                    iteration_best = Some(particle.position.clone());
                }
            }
            let iteration_best = iteration_best.expect("non-empty swarm");
            let improved = iteration_best.value() < global_best.value();
            if improved {
                global_best = iteration_best.clone();
            }
            recorder.observe(&iteration_best);
            recorder.push(iteration, evaluator.count(), iteration_best.point(), improved);
        }

        let (best, trace) = recorder.finish();
        Ok(RunOutcome {
            result: RunResult {
                algorithm: Algorithm::Pso,
                objective: objective.name().to_string(),
                seed,
                best,
                eval_count: evaluator.count(),
                wall_time_ms: start.elapsed().as_millis() as u64,
                params_echo: serde_json::to_value(params).expect("params serialize"),
            },
            trace,
        })
    }
}
