//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line.
//!
//!     cargo test --release -p harmony-core --test acceptance -- --nocapture

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use harmony_core::baselines::fa::fa_sweep;
use harmony_core::baselines::{fa_attractiveness, metropolis_accept, FaParams, GaParams};
use harmony_core::benchmarks::{self, BenchmarkSpec};
use harmony_core::harness::export::write_csv;
use harmony_core::harness::{self, AlgorithmParams, Budget, RunConfig, RunRecord};
use harmony_core::hs::Branch;
use harmony_core::{
    selftest, validate_trace, Algorithm, Bounds, Evaluator, HarmonyMemory, HarmonySearch, HsParams,
    Objective, Optimizer, RngStream, RunOutcome,
};

const SEEDS: std::ops::RangeInclusive<u64> = 1..=30;

fn report(n: u32, pass: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn run_seeds(opt: &(dyn Optimizer + Sync), objective: &dyn Objective) -> Vec<RunOutcome> {
    use rayon::prelude::*;
    let seeds: Vec<u64> = SEEDS.collect();
    seeds
        .par_iter()
        .map(|&s| opt.run(objective, s).expect("run"))
        .collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[test]
fn criterion_1_rosenbrock_log_reproduction() {
    let objective = benchmarks::rosenbrock_log_spec();
    let hs = HarmonySearch::new(HsParams {
        hms: 20,
        r_accept: 0.95,
        r_pa: 0.7,
        b_range: None,
        max_iterations: 15_000,
    });
    let start = Instant::now();
    let runs = run_seeds(&hs, &objective);
    let elapsed = start.elapsed();

    let hits = runs
        .iter()
        .filter(|o| {
            let p = o.result.best.point();
            let linf = (p[0] - 1.0).abs().max((p[1] - 1.0).abs());
            linf <= 0.1 && o.result.best.value() <= 1e-2
        })
        .count();
    let med = median(runs.iter().map(|o| o.result.best.value()).collect());
    let rate = hits as f64 / runs.len() as f64;
    assert!(runs.iter().all(|o| o.result.eval_count == 15_020));
    report(
        1,
        rate >= 0.9 && med <= 1e-3,
        format!("{hits}/30 within 0.1 of (1,1) with f <= 1e-2 (need >= 90%), median best {med:.3e} (need <= 1e-3), {:.2}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_michalewicz_reproduction() {
    let objective = benchmarks::michalewicz2_spec();
    // The printed function agrees with the published optimum, so the
    // threshold stays at -1.79.
    let optimum = objective.evaluate(objective.known_optimum_point().unwrap());
    assert!((optimum - (-1.801)).abs() <= 5e-3, "{optimum}");
    let config = RunConfig::new(Algorithm::Hs, "michalewicz2", SEEDS.collect(), Budget::Evaluations(25_000)).unwrap();
    let hs = config.params.optimizer();
    assert_eq!(hs.evaluations(), 25_000);
    let runs = run_seeds(hs.as_ref(), &objective);
    let hits = runs.iter().filter(|o| o.result.best.value() <= -1.79).count();
    let rate = hits as f64 / runs.len() as f64;
    report(2, rate >= 0.8, format!("{hits}/30 reached <= -1.79 within 25000 evaluations (need >= 80%)"));
}

#[test]
fn criterion_3_branch_probability_law() {
    let objective = harmony_core::FnObjective::new("line", Bounds::cube(1, 0.0, 1.0).unwrap(), |x| x[0]);
    let params = HsParams { hms: 10, r_accept: 0.9, r_pa: 0.3, b_range: Some(vec![0.01]), max_iterations: 0 };
    let mut ev = Evaluator::new(&objective);
    let mut rng = RngStream::new(31_415);
    let memory = HarmonyMemory::init(&mut ev, 10, &mut rng).unwrap();
    let bandwidth = params.resolve_bandwidth(objective.bounds()).unwrap();

    let n = 100_000;
    let (mut random, mut pitch) = (0usize, 0usize);
    for _ in 0..n {
        match memory.improvise_component(0, &params, &bandwidth, objective.bounds(), &mut rng).1 {
            Branch::Random => random += 1,
            Branch::PitchAdjusted => pitch += 1,
            Branch::MemoryOnly => {}
        }
    }
    let f_random = random as f64 / n as f64;
    let f_pitch = pitch as f64 / n as f64;
    let ok = (f_random - 0.100).abs() <= 0.004 && (f_pitch - 0.270).abs() <= 0.006;
    report(3, ok, format!("randomization {f_random:.5} (0.100 +- 0.004), pitch adjust {f_pitch:.5} (0.270 +- 0.006)"));
}

#[test]
fn criterion_4_equation_oracles() {
    let checks = selftest::run_all();
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}::{} ({})", c.module, c.name, c.outcome.as_ref().unwrap_err()))
        .collect();
    report(4, failed.is_empty(), format!("{} oracle checks, failures: {failed:?}", checks.len()));
}

/// Counts calls independently of the optimizers' own bookkeeping.
struct Counting<'a> {
    inner: &'a BenchmarkSpec,
    calls: AtomicU64,
}

impl Objective for Counting<'_> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn bounds(&self) -> &Bounds {
        self.inner.bounds()
    }

    fn evaluate(&self, point: &[f64]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(point)
    }
}

fn trace_bytes(outcome: &RunOutcome, dims: usize) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(&mut buf, &outcome.trace, dims).unwrap();
    buf
}

#[test]
fn criterion_5_monotonicity_and_determinism() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for spec in benchmarks::registry() {
        for algorithm in Algorithm::ALL {
            let config = RunConfig::new(algorithm, spec.name(), vec![11, 12, 13], Budget::Evaluations(5_000)).unwrap();
            let optimizer = config.params.optimizer();
            for &seed in &config.seeds {
                let counting = Counting { inner: spec, calls: AtomicU64::new(0) };
                let a = optimizer.run(&counting, seed).unwrap();
                let b = optimizer.run(spec, seed).unwrap();
                let calls = counting.calls.load(Ordering::Relaxed);
                let label = format!("{algorithm}/{}/seed {seed}", spec.name());
                if let Err(e) = validate_trace(&a.trace) {
                    failures.push(format!("{label}: {e}"));
                }
                if a.result.eval_count != calls
                    || calls != optimizer.evaluations()
                    || calls > config.evaluation_ceiling()
                    || a.trace.last().map(|r| r.eval_count) != Some(calls)
                {
                    failures.push(format!(
                        "{label}: reported {} evals, objective saw {calls}, ceiling {}",
                        a.result.eval_count,
                        config.evaluation_ceiling()
                    ));
                }
                if trace_bytes(&a, spec.dims()) != trace_bytes(&b, spec.dims()) {
                    failures.push(format!("{label}: re-run trace differs"));
                }
                checked += 1;
            }
        }
    }
    report(5, failures.is_empty(), format!("{checked} runs checked, failures: {failures:?}"));
}

#[test]
fn criterion_6_sa_acceptance_statistics() {
    let n = 100_000u32;
    let mut lines = Vec::new();
    let mut ok = true;
    for (i, (delta_e, temperature)) in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0)].into_iter().enumerate() {
        let mut rng = RngStream::new(600 + i as u64);
        let accepted = (0..n)
            .filter(|_| metropolis_accept(delta_e, temperature, 1.0, &mut rng).unwrap())
            .count();
        let p = (-delta_e / temperature).exp();
        let band = 4.0 * (p * (1.0 - p) / n as f64).sqrt();
        let rate = accepted as f64 / n as f64;
        ok &= (rate - p).abs() <= band;
        lines.push(format!("(dE={delta_e}, T={temperature}): {rate:.5} vs {p:.5} +- {band:.5}"));
    }
    report(6, ok, lines.join("; "));
}

#[test]
fn criterion_7_baseline_competence() {
    let spec = benchmarks::rosenbrock_log_spec();
    let mut ok = true;
    let mut lines = Vec::new();
    for algorithm in [Algorithm::Sa, Algorithm::Ga, Algorithm::Pso, Algorithm::Fa] {
        let mut config = RunConfig::new(algorithm, "rosenbrock_log", SEEDS.collect(), Budget::Evaluations(50_000)).unwrap();
        if algorithm == Algorithm::Ga {
            // Pilot-selected configuration (see examples/pilot.rs).
            config = config
                .with_params(AlgorithmParams::Ga(GaParams { p_m: 0.1, ..Default::default() }))
                .unwrap();
        }
        let runs = harness::execute(&config, &spec).unwrap();
        let hits = runs
            .iter()
            .filter(|r| matches!(r, RunRecord::Completed(o) if o.result.best.value() <= 0.1 && o.result.eval_count <= 50_000))
            .count();
        let rate = hits as f64 / runs.len() as f64;
        ok &= rate >= 0.7;
        lines.push(format!("{algorithm} {hits}/30"));
    }
    report(7, ok, format!("best <= 0.1 within 50000 evaluations (need >= 21/30): {}", lines.join(", ")));
}

#[test]
fn criterion_8_firefly_limits() {
    let exact = fa_attractiveness(1.7, 3.0, 0.0) == 1.7
        && [0.0, 0.5, 1.0, 10.0].iter().all(|&r| fa_attractiveness(1.0, 0.0, r) == 1.0);

    let bounds = Bounds::cube(2, -10.0, 10.0).unwrap();
    let params = FaParams { alpha: 0.0, beta: 1.0, gamma: 1e6, ..Default::default() };
    let mut positions: Vec<Vec<f64>> = (0..4)
        .flat_map(|i| (0..4).map(move |j| vec![i as f64 - 1.5, j as f64 - 1.5]))
        .collect();
    let mut rng = RngStream::new(8);
    let mut worst_displacement = 0.0f64;
    for _ in 0..20 {
        let values: Vec<f64> = positions.iter().map(|p| benchmarks::sphere(p) + 0.01 * p[0]).collect();
        let moved = fa_sweep(&positions, &values, &params, &bounds, &mut rng);
        let displacement: f64 = moved
            .iter()
            .zip(&positions)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
            .sum();
        worst_displacement = worst_displacement.max(displacement);
        positions = moved;
    }
    report(
        8,
        exact && worst_displacement <= 1e-6,
        format!("attractiveness exact: {exact}; max population displacement per iteration {worst_displacement:e} (need <= 1e-6)"),
    );
}
