//! Pilot runs used to pick baseline defaults and freeze competence
//! thresholds. Prints per-configuration success counts over 30 seeds.
//!
//!     cargo run --release -p harmony-core --example pilot

use harmony_core::{
    benchmarks, FaParams, Firefly, GaParams, GeneticAlgorithm, HarmonySearch, HsParams, Objective,
    Optimizer, ParticleSwarm, PsoParams, SaParams, SimulatedAnnealing,
};
use rayon::prelude::*;

const SEEDS: u64 = 30;

fn report(label: &str, opt: &(dyn Optimizer + Sync), objective: &dyn Objective, threshold: f64) {
    let mut values: Vec<f64> = (0..SEEDS)
        .into_par_iter()
        .map(|s| opt.run(objective, 1_000 + s).unwrap().result.best.value())
        .collect();
    values.sort_by(f64::total_cmp);
    let hits = values.iter().filter(|&&v| v <= threshold).count();
    println!(
        "{label:<40} evals={:>6} hits(<= {threshold:e})={hits:>2}/{SEEDS} median={:.3e} worst={:.3e}",
        opt.evaluations(),
        values[values.len() / 2],
        values[values.len() - 1],
    );
}

fn main() {
    let rosen = benchmarks::rosenbrock_log_spec();
    let sphere = benchmarks::sphere_spec();
    let mich = benchmarks::michalewicz2_spec();

    report("hs rosenbrock_log 15000", &HarmonySearch::new(HsParams::default()), &rosen, 1e-2);
    report("hs rosenbrock_log 15000 (median<=1e-3)", &HarmonySearch::new(HsParams::default()), &rosen, 1e-3);
    report(
        "hs michalewicz2 25000 evals",
        &HarmonySearch::new(HsParams { max_iterations: 25_000 - 20, ..Default::default() }),
        &mich,
        -1.79,
    );

    let budget = 50_000u64;
    report("sa rosenbrock_log", &SimulatedAnnealing::new(SaParams { max_iterations: budget - 1, ..Default::default() }), &rosen, 0.1);
    let ga = GaParams { p_m: 0.1, ..Default::default() };
    let gens = (budget - ga.pop_size as u64) / (ga.pop_size - ga.elite_count) as u64;
    report("ga rosenbrock_log", &GeneticAlgorithm::new(GaParams { max_generations: gens, ..ga }), &rosen, 0.1);
    let pso = PsoParams::default();
    report("pso rosenbrock_log", &ParticleSwarm::new(PsoParams { max_iterations: budget / pso.swarm_size as u64 - 1, ..pso }), &rosen, 0.1);
    let fa = FaParams::default();
    report("fa rosenbrock_log", &Firefly::new(FaParams { max_iterations: budget / fa.pop_size as u64 - 1, ..fa }), &rosen, 0.1);

    report("sa sphere 20000", &SimulatedAnnealing::new(SaParams { max_iterations: 20_000, ..Default::default() }), &sphere, 1e-2);
    report("pso sphere swarm 20 x 1000", &ParticleSwarm::new(PsoParams { swarm_size: 20, max_iterations: 1_000, ..Default::default() }), &sphere, 1e-2);
}
