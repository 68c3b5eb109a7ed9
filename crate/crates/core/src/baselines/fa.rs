//! Firefly algorithm.
//!
//! Brightness is the negated objective. Each firefly moves toward every
//! brighter one by `beta * exp(-gamma r^2) * (x_j - x_i)` plus a random walk
//! `alpha * e1`, `e1 ~ U[-0.5, 0.5]` per component. A firefly with no
//! brighter peer takes the random walk alone.

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
pub struct FaParams {
    pub pop_size: usize,
    /// Random-walk scale, problem units.
    pub alpha: f64,
    /// Attractiveness at zero distance.
    pub beta: f64,
    /// Light absorption coefficient.
    pub gamma: f64,
    pub max_iterations: u64,
}

impl Default for FaParams {
    fn default() -> Self {
        FaParams {
            pop_size: 25,
            alpha: 0.05,
            beta: 1.0,
            gamma: 0.1,
            max_iterations: 1_000,
        }
    }
}

impl FaParams {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::param("pop_size", format!("must be >= 2, got {}", self.pop_size)));
        }
        check_non_negative("alpha", self.alpha)?;
        check_non_negative("beta", self.beta)?;
        check_non_negative("gamma", self.gamma)
    }
}

/// `beta * exp(-gamma * r^2)`.
pub fn fa_attractiveness(beta: f64, gamma: f64, r: f64) -> f64 {
    beta * (-gamma * r * r).exp()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// One firefly sweep over a population with known objective values.
///
/// Attraction targets use the positions at the start of the sweep, so the
/// result does not depend on visiting order. Returns the new positions,
/// clamped to `bounds`.
pub fn fa_sweep(
    positions: &[Vec<f64>],
    values: &[f64],
    params: &FaParams,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> Vec<Vec<f64>> {
    let dims = bounds.dims();
    let mut moved = Vec::with_capacity(positions.len());
    for (i, xi) in positions.iter().enumerate() {
        let mut x = xi.clone();
        let mut attracted = false;
        for (j, xj) in positions.iter().enumerate() {
            if values[j] < values[i] {
                attracted = true;
                let strength = fa_attractiveness(params.beta, params.gamma, distance(&x, xj));
                for k in 0..dims {
                    let walk = params.alpha * rng.uniform(-0.5, 0.5);
                    x[k] = bounds.clamp_component(k, x[k] + strength * (xj[k] - x[k]) + walk);
                }
            }
        }
        if !attracted {
            for (k, c) in x.iter_mut().enumerate() {
                let walk = params.alpha * rng.uniform(-0.5, 0.5);
                *c = bounds.clamp_component(k, *c + walk);
            }
        }
        moved.push(x);
    }
    moved
}

#[derive(Debug, Clone, Default)]
pub struct Firefly {
    pub params: FaParams,
}

impl Firefly {
    pub fn new(params: FaParams) -> Self {
        Firefly { params }
    }
}

impl Optimizer for Firefly {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Fa
    }

    fn evaluations(&self) -> u64 {
        self.params.pop_size as u64 * (1 + self.params.max_iterations)
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> Result<RunOutcome> {
        let start = std::time::Instant::now();
        let params = &self.params;
        params.validate()?;
        let bounds = objective.bounds();
        let mut rng = RngStream::new(seed);
        let mut evaluator = Evaluator::with_limit(objective, self.evaluations());

        let mut population = (0..params.pop_size)
            .map(|_| evaluator.evaluate(uniform_point(bounds, &mut rng)))
            .collect::<Result<Vec<_>>>()?;
        let initial_best = best_of(&population).clone();
        let mut recorder = TraceRecorder::new(initial_best.clone());
        recorder.push(0, evaluator.count(), initial_best.point(), true);

        for iteration in 1..=params.max_iterations {
            let positions: Vec<Vec<f64>> = population.iter().map(|f| f.point().to_vec()).collect();
            let values: Vec<f64> = population.iter().map(EvaluatedSolution::value).collect();
            let moved = fa_sweep(&positions, &values, params, bounds, &mut rng);
            population = moved
                .into_iter()
                .map(|x| evaluator.evaluate(SolutionVector::from_clamped(x)))
                .collect::<Result<Vec<_>>>()?;
            let iteration_best = best_of(&population);
            let improved = recorder.observe(iteration_best);
            recorder.push(iteration, evaluator.count(), iteration_best.point(), improved);
        }

        let (best, trace) = recorder.finish();
        Ok(RunOutcome {
            result: RunResult {
                algorithm: Algorithm::Fa,
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

fn best_of(population: &[EvaluatedSolution]) -> &EvaluatedSolution {
    population
        .iter()
        .reduce(|best, f| if f.value() < best.value() { f } else { best })
        .expect("non-empty population")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks;
    use crate::trace::validate_trace;

    #[test]
    fn attractiveness_examples() {
        assert_eq!(fa_attractiveness(2.0, 1.0, 0.0), 2.0);
        for r in [0.0, 0.5, 3.0, 1e3] {
            assert_eq!(fa_attractiveness(1.0, 0.0, r), 1.0);
        }
        assert!(fa_attractiveness(1.0, 1e6, 1.0) < 1e-300);
    }

    #[test]
    fn attractiveness_decreases_with_distance() {
        for gamma in [1e-3, 0.1, 1.0, 10.0] {
            let mut prev = fa_attractiveness(1.5, gamma, 0.0);
            for step in 1..200 {
                let r = step as f64 * 0.01;
                let a = fa_attractiveness(1.5, gamma, r);
                assert!(a < prev || a == 0.0);
                prev = a;
            }
        }
    }

    #[test]
    fn null_dynamics_are_static() {
        let bounds = Bounds::cube(2, -10.0, 10.0).unwrap();
        let positions = vec![vec![1.0, 2.0], vec![-3.0, 4.0], vec![0.0, 0.0]];
        let values = vec![3.0, 1.0, 2.0];
        let p = FaParams { alpha: 0.0, beta: 0.0, ..Default::default() };
        let moved = fa_sweep(&positions, &values, &p, &bounds, &mut RngStream::new(1));
        assert_eq!(moved, positions);
    }

    #[test]
    fn full_attraction_lands_on_brighter() {
        let bounds = Bounds::cube(2, -10.0, 10.0).unwrap();
        let positions = vec![vec![1.0, 2.0], vec![-3.0, 4.0]];
        let values = vec![5.0, 1.0];
        let p = FaParams { alpha: 0.0, beta: 1.0, gamma: 0.0, ..Default::default() };
        let moved = fa_sweep(&positions, &values, &p, &bounds, &mut RngStream::new(1));
        assert_eq!(moved[0], vec![-3.0, 4.0]);
        assert_eq!(moved[1], vec![-3.0, 4.0]);
    }

    #[test]
    fn strong_absorption_freezes_population() {
        let bounds = Bounds::cube(1, -10.0, 10.0).unwrap();
        let positions: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64]).collect();
        let values: Vec<f64> = (0..5).map(|i| i as f64).collect();
        let p = FaParams { alpha: 0.0, beta: 1.0, gamma: 1e6, ..Default::default() };
        let moved = fa_sweep(&positions, &values, &p, &bounds, &mut RngStream::new(1));
        let displacement: f64 = moved.iter().zip(&positions).map(|(a, b)| distance(a, b)).sum();
        assert!(displacement <= 1e-6);
    }

    #[test]
    fn random_walk_is_bounded() {
        let bounds = Bounds::cube(2, -10.0, 10.0).unwrap();
        let positions = vec![vec![0.0, 0.0], vec![5.0, 5.0]];
        let values = vec![0.0, 0.0];
        let p = FaParams { alpha: 0.4, ..Default::default() };
        let moved = fa_sweep(&positions, &values, &p, &bounds, &mut RngStream::new(3));
        for (a, b) in moved.iter().zip(&positions) {
            assert!(a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 0.2));
        }
    }

    #[test]
    fn run_accounting() {
        let obj = benchmarks::rosenbrock_log_spec();
        let fa = Firefly::new(FaParams { pop_size: 10, max_iterations: 50, ..Default::default() });
        let out = fa.run(&obj, 6).unwrap();
        assert_eq!(out.result.eval_count, 10 * 51);
        validate_trace(&out.trace).unwrap();
    }
}
