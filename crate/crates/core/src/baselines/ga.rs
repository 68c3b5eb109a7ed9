//! Real-valued genetic algorithm with roulette selection, single-point
//! crossover, Gaussian mutation and elitism.
//!
//! Roulette weights need positive, larger-is-better fitness, so objective
//! values are mapped through `1 / (1 + f_i - min_j f_j)` before
//! normalization.

use serde::{Deserialize, Serialize};

use super::{check_probability, resolve_scale};
use crate::domain::{uniform_point, EvaluatedSolution, SolutionVector};
use crate::error::{Error, Result};
use crate::objective::{Evaluator, Objective};
use crate::rng::RngStream;
use crate::run::{Algorithm, Optimizer, RunOutcome, RunResult};
use crate::trace::TraceRecorder;

pub const DEFAULT_MUTATION_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaParams {
    pub pop_size: usize,
    /// Crossover probability.
    pub p_c: f64,
    /// Per-component mutation probability.
    pub p_m: f64,
    /// Standard deviation of Gaussian mutation per dimension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation_scale: Option<Vec<f64>>,
    /// Individuals copied unchanged into the next generation.
    pub elite_count: usize,
    pub max_generations: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            pop_size: 50,
            p_c: 0.85,
            p_m: 0.05,
            mutation_scale: None,
            elite_count: 2,
            max_generations: 500,
        }
    }
}

impl GaParams {
    pub fn materialized(&self, bounds: &crate::Bounds) -> Result<GaParams> {
        if self.pop_size < 2 {
            return Err(Error::param("pop_size", format!("must be >= 2, got {}", self.pop_size)));
        }
        if self.elite_count >= self.pop_size {
            return Err(Error::param(
                "elite_count",
                format!("must be < pop_size ({}), got {}", self.pop_size, self.elite_count),
            ));
        }
        check_probability("p_c", self.p_c)?;
        check_probability("p_m", self.p_m)?;
        Ok(GaParams {
            mutation_scale: Some(resolve_scale(
                "mutation_scale",
                &self.mutation_scale,
                DEFAULT_MUTATION_FRACTION,
                bounds,
            )?),
            ..self.clone()
        })
    }

    fn offspring_per_generation(&self) -> u64 {
        (self.pop_size - self.elite_count.min(self.pop_size)) as u64
    }
}

/// Normalizes strictly positive fitness values to sum to one.
pub fn relative_fitness(values: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::param("fitness", format!("values must be finite and > 0, got {bad}")));
    }
    let total: f64 = values.iter().sum();
    Ok(values.iter().map(|v| v / total).collect())
}

/// Positive, larger-is-better fitness from objective values to minimize.
pub fn minimization_fitness(objective_values: &[f64]) -> Vec<f64> {
    let min = objective_values.iter().copied().fold(f64::INFINITY, f64::min);
    objective_values.iter().map(|f| 1.0 / (1.0 + (f - min))).collect()
}

fn roulette(cumulative: &[f64], rng: &mut RngStream) -> usize {
    let total = *cumulative.last().expect("non-empty population");
    let u = rng.unit() * total;
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
}

#[derive(Debug, Clone, Default)]
pub struct GeneticAlgorithm {
    pub params: GaParams,
}

impl GeneticAlgorithm {
    pub fn new(params: GaParams) -> Self {
        GeneticAlgorithm { params }
    }
}

impl Optimizer for GeneticAlgorithm {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Ga
    }

    fn evaluations(&self) -> u64 {
        self.params.pop_size as u64 + self.params.max_generations * self.params.offspring_per_generation()
    }

    fn run(&self, objective: &dyn Objective, seed: u64) -> Result<RunOutcome> {
        let start = std::time::Instant::now();
        let bounds = objective.bounds();
        let params = self.params.materialized(bounds)?;
        let scale = params.mutation_scale.as_deref().expect("materialized");
        let dims = bounds.dims();
        let n_offspring = params.offspring_per_generation() as usize;
        let mut rng = RngStream::new(seed);
        let mut evaluator = Evaluator::with_limit(objective, self.evaluations());

        let mut population = (0..params.pop_size)
            .map(|_| evaluator.evaluate(uniform_point(bounds, &mut rng)))
            .collect::<Result<Vec<_>>>()?;
        sort_by_value(&mut population);
        let mut recorder = TraceRecorder::new(population[0].clone());
        recorder.push(0, evaluator.count(), population[0].point(), true);

        for generation in 1..=params.max_generations {
            let values: Vec<f64> = population.iter().map(EvaluatedSolution::value).collect();
            let weights = relative_fitness(&minimization_fitness(&values))?;
            let cumulative: Vec<f64> = weights
                .iter()
                .scan(0.0, |acc, w| {
                    *acc += w;
                    Some(*acc)
                })
                .collect();

            let mut children: Vec<Vec<f64>> = Vec::with_capacity(n_offspring + 1);
            while children.len() < n_offspring {
                let a = population[roulette(&cumulative, &mut rng)].point().to_vec();
                let b = population[roulette(&cumulative, &mut rng)].point().to_vec();
                let (mut c1, mut c2) = (a, b);
                if rng.unit() < params.p_c {
                    let cut = if dims > 1 { 1 + rng.index(dims - 1) } else { 0 };
                    for i in cut..dims {
                        std::mem::swap(&mut c1[i], &mut c2[i]);
                    }
                }
                children.push(c1);
                children.push(c2);
            }
            children.truncate(n_offspring);

            let mut next: Vec<EvaluatedSolution> = population[..params.elite_count].to_vec();
            let mut generation_best: Option<EvaluatedSolution> = None;
            for mut child in children {
                for (i, c) in child.iter_mut().enumerate() {
                    if rng.unit() < params.p_m {
                        *c = bounds.clamp_component(i, *c + scale[i] * rng.normal());
                    }
                }
                let child = evaluator.evaluate(SolutionVector::from_clamped(child))?;
                if generation_best.as_ref().map_or(true, |g| child.value() < g.value()) {
                    generation_best = Some(child.clone());
                }
                next.push(child);
            }
            sort_by_value(&mut next);
            population = next;

            let generation_best = generation_best.expect("at least one offspring");
            let improved = recorder.observe(&generation_best);
            recorder.push(generation, evaluator.count(), generation_best.point(), improved);
        }

        let (best, trace) = recorder.finish();
        Ok(RunOutcome {
            result: RunResult {
                algorithm: Algorithm::Ga,
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

/// Stable ascending sort by objective value.
fn sort_by_value(population: &mut [EvaluatedSolution]) {
    population.sort_by(|a, b| a.value().total_cmp(&b.value()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks;
    use crate::trace::validate_trace;
    use proptest::prelude::*;

    #[test]
    fn relative_fitness_examples() {
        assert_eq!(relative_fitness(&[1.0, 1.0, 1.0, 1.0]).unwrap(), vec![0.25; 4]);
        assert_eq!(relative_fitness(&[1.0, 3.0]).unwrap(), vec![0.25, 0.75]);
        assert!(relative_fitness(&[1.0, 0.0]).is_err());
        assert!(relative_fitness(&[1.0, -2.0]).is_err());
        assert!(relative_fitness(&[f64::NAN]).is_err());
    }

    #[test]
    fn minimization_fitness_is_positive_and_reversed() {
        let f = minimization_fitness(&[3.0, -1.0, 0.5]);
        assert_eq!(f[1], 1.0);
        assert!(f.iter().all(|&v| v > 0.0 && v <= 1.0));
        assert!(f[1] > f[2] && f[2] > f[0]);
    }

    #[test]
    fn roulette_respects_weights() {
        let cumulative = [0.1, 0.4, 1.0];
        let mut rng = RngStream::new(4);
        let mut counts = [0usize; 3];
        let n = 100_000;
        for _ in 0..n {
            counts[roulette(&cumulative, &mut rng)] += 1;
        }
        for (c, p) in counts.iter().zip([0.1, 0.3, 0.6]) {
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            assert!((*c as f64 / n as f64 - p).abs() < 4.0 * sigma);
        }
    }

    #[test]
    fn default_rates_in_recommended_bands() {
        let p = GaParams::default();
        assert!((0.7..=0.99).contains(&p.p_c));
        assert!((0.001..=0.1).contains(&p.p_m));
    }

    #[test]
    fn no_variation_keeps_best_constant() {
        let obj = benchmarks::rosenbrock_log_spec();
        let ga = GeneticAlgorithm::new(GaParams {
            pop_size: 10,
            p_c: 0.0,
            p_m: 0.0,
            elite_count: 9,
            max_generations: 200,
            ..Default::default()
        });
        let out = ga.run(&obj, 12).unwrap();
        let first = out.trace[0].best_value;
        assert!(out.trace.iter().all(|r| r.best_value == first));
        assert_eq!(out.result.eval_count, 10 + 200);
    }

    #[test]
    fn heavy_mutation_explores_whole_domain() {
        let obj = benchmarks::rosenbrock_log_spec();
        let ga = GeneticAlgorithm::new(GaParams {
            p_m: 1.0,
            mutation_scale: Some(vec![1e6, 1e6]),
            max_generations: 100,
            ..Default::default()
        });
        let out = ga.run(&obj, 2).unwrap();
        // Saturated mutation pins almost every offspring to a corner.
        let corners = out.trace[1..]
            .iter()
            .filter(|r| r.candidate_point.iter().all(|c| c.abs() == 10.0))
            .count();
        assert!(corners > 90, "{corners}");
    }

    #[test]
    fn accounting_and_monotone_trace() {
        let obj = benchmarks::michalewicz2_spec();
        let ga = GeneticAlgorithm::new(GaParams { max_generations: 100, ..Default::default() });
        let out = ga.run(&obj, 3).unwrap();
        assert_eq!(out.result.eval_count, 50 + 100 * 48);
        assert_eq!(ga.evaluations(), out.result.eval_count);
        validate_trace(&out.trace).unwrap();
    }

    #[test]
    fn rejects_bad_params() {
        let b = crate::Bounds::cube(1, 0.0, 1.0).unwrap();
        assert!(GaParams { pop_size: 1, elite_count: 0, ..Default::default() }.materialized(&b).is_err());
        assert!(GaParams { pop_size: 4, elite_count: 4, ..Default::default() }.materialized(&b).is_err());
        assert!(GaParams { p_c: 1.5, ..Default::default() }.materialized(&b).is_err());
    }

    #[test]
    fn one_dimensional_problems_work() {
        let obj = crate::FnObjective::new("x2", crate::Bounds::cube(1, -3.0, 3.0).unwrap(), |x| x[0] * x[0]);
        let out = GeneticAlgorithm::new(GaParams { max_generations: 50, ..Default::default() })
            .run(&obj, 1)
            .unwrap();
        assert!(out.result.best.value() < 0.1);
    }

    proptest! {
        #[test]
        fn relative_fitness_normalizes_and_preserves_order(
            values in prop::collection::vec(1e-6f64..1e6, 1..64)
        ) {
            let r = relative_fitness(&values).unwrap();
            let sum: f64 = r.iter().sum();
            prop_assert!((sum - 1.0).abs() <= values.len() as f64 * f64::EPSILON);
            for i in 0..values.len() {
                for j in 0..values.len() {
                    if values[i] < values[j] {
                        prop_assert!(r[i] <= r[j]);
                    }
                }
            }
        }
    }
}
