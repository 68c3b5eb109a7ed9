//! Built-in oracle checks: the worked examples of every module, runnable
//! from the CLI (`harmony selftest`) without a test harness.

use std::f64::consts::{LN_2, PI};

use crate::baselines::{
    fa::fa_sweep, fa_attractiveness, geometric_cooling, pso_update, relative_fitness,
    sa_accept_probability, FaParams, GaParams, ParticleSwarm, PsoParams,
};
use crate::benchmarks::{self, michalewicz2, rosenbrock_log, sphere};
use crate::domain::{clamp, uniform_point, Bounds, SolutionVector};
use crate::harness::export::write_csv;
use crate::hs::{branch_probabilities, pitch_adjust, HarmonyMemory, HarmonySearch, HsParams};
use crate::music::{freq_to_pitch, pitch_to_freq, wavelength};
use crate::objective::{Evaluator, FnObjective, Objective};
use crate::rng::RngStream;
use crate::run::Optimizer;
use crate::trace::TraceRecord;

/// Relative tolerance for analytic values (absolute near zero).
pub const ANALYTIC_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

type Outcome = Result<(), String>;

fn close_to(actual: f64, expected: f64, tol: f64) -> Outcome {
    if (actual - expected).abs() <= tol * expected.abs().max(1.0) {
        Ok(())
    } else {
        Err(format!("got {actual}, expected {expected} (tol {tol})"))
    }
}

fn close(actual: f64, expected: f64) -> Outcome {
    close_to(actual, expected, ANALYTIC_TOLERANCE)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<T: std::fmt::Debug, E>(r: Result<T, E>) -> Outcome {
    match r {
        Ok(v) => Err(format!("expected an error, got {v:?}")),
        Err(_) => Ok(()),
    }
}

fn sv(v: &[f64]) -> SolutionVector {
    SolutionVector::new(v.to_vec()).expect("finite")
}

fn all<I: IntoIterator<Item = Outcome>>(checks: I) -> Outcome {
    checks.into_iter().collect::<Result<Vec<()>, String>>().map(drop)
}

fn core_checks() -> Vec<(&'static str, Outcome)> {
    let unit = Bounds::cube(1, 0.0, 1.0).unwrap();
    let sym2 = Bounds::cube(2, -1.0, 1.0).unwrap();
    vec![
        ("clamp saturates", clamp(&[5.0], &unit).map_err(|e| e.to_string()).and_then(|c| ensure(c.as_slice() == [1.0], || format!("{c:?}")))),
        ("clamp identity inside", clamp(&[0.5], &unit).map_err(|e| e.to_string()).and_then(|c| ensure(c.as_slice() == [0.5], || format!("{c:?}")))),
        ("clamp per component", clamp(&[-3.2, 0.0], &sym2).map_err(|e| e.to_string()).and_then(|c| ensure(c.as_slice() == [-1.0, 0.0], || format!("{c:?}")))),
        ("clamp rejects mismatch and NaN", all([err(clamp(&[0.0, 0.0], &unit)), err(clamp(&[f64::NAN], &unit))])),
        ("degenerate bounds rejected", err(Bounds::new(vec![0.0, 0.0], vec![0.0, 0.0]))),
        ("uniform point in [-1, 1]", {
            let b = Bounds::cube(1, -1.0, 1.0).unwrap();
            let mut rng = RngStream::new(1);
            ensure((0..1000).all(|_| b.contains(&uniform_point(&b, &mut rng))), || "escaped bounds".into())
        }),
        ("uniform point mean 0.5 +- 0.01 over 1e5 draws", {
            let mut rng = RngStream::new(2024);
            let mean = (0..100_000).map(|_| uniform_point(&unit, &mut rng)[0]).sum::<f64>() / 1e5;
            ensure((mean - 0.5).abs() < 0.01, || format!("mean {mean}"))
        }),
    ]
}

fn hs_checks() -> Vec<(&'static str, Outcome)> {
    let rosen = benchmarks::rosenbrock_log_spec();
    vec![
        ("branch probabilities (0.95, 0.7)", {
            let p = branch_probabilities(0.95, 0.7);
            all([close(p.random, 0.05), close(p.pitch, 0.665), close(p.memory_only, 0.285)])
        }),
        ("branch probabilities pure memory", {
            let p = branch_probabilities(1.0, 0.0);
            all([close(p.memory_only, 1.0), close(p.pitch, 0.0), close(p.random, 0.0)])
        }),
        ("branch probabilities pure random", {
            let p = branch_probabilities(0.0, 0.3);
            all([close(p.memory_only, 0.0), close(p.pitch, 0.0), close(p.random, 1.0)])
        }),
        ("pitch adjust (1, 0.1, 0.5)", close(pitch_adjust(1.0, 0.1, 0.5), 1.05)),
        ("pitch adjust identity at eps 0", close(pitch_adjust(-2.5, 0.3, 0.0), -2.5)),
        ("pitch adjust (2, 0.2, -1)", close(pitch_adjust(2.0, 0.2, -1.0), 1.8)),
        ("init memory on constant objective", {
            let seven = FnObjective::new("seven", Bounds::cube(2, 0.0, 1.0).unwrap(), |_| 7.0);
            let mut ev = Evaluator::new(&seven);
            match HarmonyMemory::init(&mut ev, 2, &mut RngStream::new(0)) {
                Ok(hm) => ensure(
                    hm.members().iter().all(|m| m.value() == 7.0) && hm.best_index() < 2 && hm.worst_index() < 2,
                    || "bad memory".into(),
                ),
                Err(e) => Err(e.to_string()),
            }
        }),
        ("init memory of 20 inside [-10, 10]^2 with 20 evaluations", {
            let mut ev = Evaluator::new(&rosen);
            match HarmonyMemory::init(&mut ev, 20, &mut RngStream::new(1)) {
                Ok(hm) => ensure(
                    hm.len() == 20 && ev.count() == 20 && hm.members().iter().all(|m| rosen.bounds().contains(m.point())),
                    || format!("len {} evals {}", hm.len(), ev.count()),
                ),
                Err(e) => Err(e.to_string()),
            }
        }),
        ("improvise branches", improvise_checks(&rosen)),
        ("memory update rule", {
            let line = FnObjective::new("x", Bounds::cube(1, -10.0, 10.0).unwrap(), |x| x[0]);
            let mut ev = Evaluator::new(&line);
            let mut eval = |v: f64| ev.evaluate(sv(&[v])).unwrap();
            let mut hm = HarmonyMemory::from_members(vec![eval(1.0), eval(2.0), eval(3.0)]);
            let rejected_worse = !hm.accept(eval(4.0));
            let rejected_tie = !hm.accept(eval(3.0));
            let accepted_best = hm.accept(eval(-1.0));
            ensure(
                rejected_worse && rejected_tie && accepted_best && hm.best().value() == -1.0 && hm.len() == 3,
                || "replacement rule violated".into(),
            )
        }),
        ("zero iterations returns best of initial memory", {
            let out = HarmonySearch::new(HsParams { max_iterations: 0, ..Default::default() }).run(&rosen, 3);
            let mut ev = Evaluator::new(&rosen);
            let hm = HarmonyMemory::init(&mut ev, 20, &mut RngStream::new(3)).unwrap();
            match out {
                Ok(o) => ensure(o.result.best == *hm.best() && o.result.eval_count == 20, || "mismatch".into()),
                Err(e) => Err(e.to_string()),
            }
        }),
    ]
}

fn improvise_checks(rosen: &benchmarks::BenchmarkSpec) -> Outcome {
    let bounds = rosen.bounds();
    let mut ev = Evaluator::new(rosen);
    let mut rng = RngStream::new(5);
    let hm = HarmonyMemory::init(&mut ev, 6, &mut rng).map_err(|e| e.to_string())?;
    let from_memory = |h: &SolutionVector, tol: f64| {
        h.iter()
            .enumerate()
            .all(|(i, &c)| hm.members().iter().any(|m| (m.point()[i] - c).abs() <= tol))
    };
    let memory_only = HsParams { hms: 6, r_accept: 1.0, r_pa: 0.0, ..Default::default() };
    let bw = memory_only.resolve_bandwidth(bounds).map_err(|e| e.to_string())?;
    for _ in 0..200 {
        let h = hm.improvise(&memory_only, &bw, bounds, &mut rng);
        ensure(from_memory(&h, 0.0), || format!("memory-only produced {h:?}"))?;
    }
    let random = HsParams { hms: 6, r_accept: 0.0, ..Default::default() };
    for _ in 0..200 {
        let h = hm.improvise(&random, &bw, bounds, &mut rng);
        ensure(bounds.contains(&h) && !from_memory(&h, 0.0), || format!("random produced {h:?}"))?;
    }
    let tiny = vec![1e-9; 2];
    let pitch = HsParams { hms: 6, r_accept: 1.0, r_pa: 1.0, b_range: Some(tiny.clone()), ..Default::default() };
    for _ in 0..200 {
        let h = hm.improvise(&pitch, &tiny, bounds, &mut rng);
        ensure(from_memory(&h, 1e-9), || format!("pitch adjust moved too far: {h:?}"))?;
    }
    Ok(())
}

fn baseline_checks() -> Vec<(&'static str, Outcome)> {
    let box2 = Bounds::cube(2, -10.0, 10.0).unwrap();
    let mut rng = RngStream::new(7);
    let null_pso = PsoParams { alpha: 0.0, beta: 0.0, ..Default::default() };
    vec![
        ("sa accept at dE = 0", sa_accept_probability(0.0, 4.2, 1.0).map_err(|e| e.to_string()).and_then(|p| close(p, 1.0))),
        ("sa accept at dE = T", sa_accept_probability(1.7, 1.7, 1.0).map_err(|e| e.to_string()).and_then(|p| close(p, 0.367879))),
        ("sa accept improving move", sa_accept_probability(-5.0, 1.0, 1.0).map_err(|e| e.to_string()).and_then(|p| close(p, 1.0))),
        ("sa rejects non-positive temperature", err(sa_accept_probability(1.0, 0.0, 1.0))),
        ("cooling t = 0", close(geometric_cooling(100.0, 0.9, 0), 100.0)),
        ("cooling t = 2", close(geometric_cooling(100.0, 0.9, 2), 81.0)),
        ("cooling strictly decreasing", ensure(
            (0..1_000).all(|t| geometric_cooling(100.0, 0.9, t + 1) < geometric_cooling(100.0, 0.9, t)),
            || "not decreasing".into(),
        )),
        ("relative fitness uniform", relative_fitness(&[1.0; 4]).map_err(|e| e.to_string()).and_then(|r| all(r.iter().map(|&v| close(v, 0.25))))),
        ("relative fitness [1, 3]", relative_fitness(&[1.0, 3.0]).map_err(|e| e.to_string()).and_then(|r| all([close(r[0], 0.25), close(r[1], 0.75)]))),
        ("relative fitness sums to 1", relative_fitness(&[0.3, 7.0, 1e-3, 42.0]).map_err(|e| e.to_string()).and_then(|r| close(r.iter().sum(), 1.0))),
        ("relative fitness rejects non-positive", err(relative_fitness(&[1.0, 0.0]))),
        ("ga default rates in recommended bands", {
            let p = GaParams::default();
            ensure((0.7..=0.99).contains(&p.p_c) && (0.001..=0.1).contains(&p.p_m), || format!("{p:?}"))
        }),
        ("pso null update", {
            let (x, _) = pso_update(&[1.0, 2.0], &[0.0, 0.0], &[3.0, 3.0], &[4.0, 4.0], &null_pso, &box2, &mut rng);
            ensure(x == [1.0, 2.0], || format!("{x:?}"))
        }),
        ("pso coincident bests keep velocity", {
            let p = PsoParams { alpha: 2.0, beta: 2.0, ..Default::default() };
            let (_, v) = pso_update(&[1.0, 1.0], &[0.5, -0.5], &[1.0, 1.0], &[1.0, 1.0], &p, &box2, &mut rng);
            ensure(v == [0.5, -0.5], || format!("{v:?}"))
        }),
        ("pso ballistic drift", {
            let (x, _) = pso_update(&[1.0, 1.0], &[0.5, -0.5], &[0.0, 0.0], &[0.0, 0.0], &null_pso, &box2, &mut rng);
            ensure(x == [1.5, 0.5], || format!("{x:?}"))
        }),
        ("pso evaluation count", {
            let pso = ParticleSwarm::new(PsoParams { swarm_size: 7, max_iterations: 13, ..Default::default() });
            match pso.run(&benchmarks::rosenbrock_log_spec(), 1) {
                Ok(o) => ensure(o.result.eval_count == 7 * 14, || format!("{}", o.result.eval_count)),
                Err(e) => Err(e.to_string()),
            }
        }),
        ("fa attractiveness at r = 0", close(fa_attractiveness(2.0, 1.0, 0.0), 2.0)),
        ("fa attractiveness with gamma = 0", all([0.0, 1.0, 7.5].map(|r| close(fa_attractiveness(1.0, 0.0, r), 1.0)))),
        ("fa attractiveness with gamma = 1e6", ensure(fa_attractiveness(1.0, 1e6, 1.0) < 1e-300, || "not ~0".into())),
        ("fa null dynamics", {
            let pos = vec![vec![1.0, 2.0], vec![3.0, -4.0]];
            let p = FaParams { alpha: 0.0, beta: 0.0, ..Default::default() };
            let moved = fa_sweep(&pos, &[2.0, 1.0], &p, &box2, &mut rng);
            ensure(moved == pos, || format!("{moved:?}"))
        }),
        ("fa full attraction lands on brighter", {
            let pos = vec![vec![1.0, 2.0], vec![3.0, -4.0]];
            let p = FaParams { alpha: 0.0, beta: 1.0, gamma: 0.0, ..Default::default() };
            let moved = fa_sweep(&pos, &[2.0, 1.0], &p, &box2, &mut rng);
            ensure(moved[0] == pos[1], || format!("{moved:?}"))
        }),
        ("fa strong absorption freezes", {
            let pos = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
            let p = FaParams { alpha: 0.0, beta: 1.0, gamma: 1e6, ..Default::default() };
            let moved = fa_sweep(&pos, &[2.0, 1.0], &p, &box2, &mut rng);
            ensure(moved == pos, || format!("{moved:?}"))
        }),
    ]
}

fn benchmark_checks() -> Vec<(&'static str, Outcome)> {
    vec![
        ("rosenbrock_log(1, 1) = 0", close(rosenbrock_log(1.0, 1.0), 0.0)),
        ("rosenbrock_log(0, 0) = ln 2", close(rosenbrock_log(0.0, 0.0), LN_2)),
        ("rosenbrock_log(2, 4) = ln 2", close(rosenbrock_log(2.0, 4.0), LN_2)),
        ("michalewicz2 published optimum", close_to(michalewicz2(2.20319, 1.57049), -1.801, 5e-3 / 1.801)),
        ("michalewicz2(0, 0) = 0", close(michalewicz2(0.0, 0.0), 0.0)),
        ("michalewicz2(pi, pi) = 0", ensure(michalewicz2(PI, PI).abs() < 1e-9, || format!("{}", michalewicz2(PI, PI)))),
        ("sphere origin", close(sphere(&[0.0, 0.0]), 0.0)),
        ("sphere [3, 4]", close(sphere(&[3.0, 4.0]), 25.0)),
        ("sphere non-negative", ensure(sphere(&[-1e3, 2.0, -0.5]) >= 0.0, || "negative".into())),
        ("registry self-consistency", benchmarks::verify_registry().map_err(|e| e.to_string())),
    ]
}

fn music_checks() -> Vec<(&'static str, Outcome)> {
    let pitch = |f: f64| freq_to_pitch(f).map_err(|e| e.to_string());
    vec![
        ("pitch of 440 Hz", pitch(440.0).and_then(|p| close(p, 69.0))),
        ("pitch of 880 Hz", pitch(880.0).and_then(|p| close(p, 81.0))),
        ("pitch of 110 Hz", pitch(110.0).and_then(|p| close(p, 45.0))),
        ("pitch rejects 0 Hz", err(freq_to_pitch(0.0))),
        ("frequency of pitch 69", close(pitch_to_freq(69.0), 440.0)),
        ("frequency of pitch 81", close(pitch_to_freq(81.0), 880.0)),
        ("pitch/frequency round trip", all([55.0, 261.63, 1000.0].map(|f| {
            pitch(f).and_then(|p| close_to(pitch_to_freq(p), f, 1e-9))
        }))),
        ("A4 wavelength at 20 C", wavelength(440.0, 20.0).map_err(|e| e.to_string()).and_then(|w| ensure((w - 0.7795).abs() < 1e-3, || format!("{w}")))),
        ("343 Hz wavelength at 20 C", wavelength(343.0, 20.0).map_err(|e| e.to_string()).and_then(|w| close(w, 1.0))),
        ("A4 wavelength at 0 C", wavelength(440.0, 0.0).map_err(|e| e.to_string()).and_then(|w| close(w, 331.0 / 440.0))),
        ("wavelength rejects bad inputs", all([err(wavelength(0.0, 20.0)), err(wavelength(440.0, -560.0))])),
    ]
}

fn harness_checks() -> Vec<(&'static str, Outcome)> {
    let record = |i: u64| TraceRecord {
        iteration: i,
        eval_count: i + 1,
        best_value: 1.0,
        best_point: sv(&[0.0, 1.0]),
        candidate_point: sv(&[2.0, 3.0]),
        accepted: true,
    };
    let render = |trace: &[TraceRecord]| {
        let mut buf = Vec::new();
        write_csv(&mut buf, trace, 2).map(|_| String::from_utf8(buf).expect("utf8"))
    };
    let trace: Vec<TraceRecord> = (0..3).map(record).collect();
    vec![
        ("empty trace is header-only csv", render(&[]).map_err(|e| e.to_string()).and_then(|t| ensure(t.lines().count() == 1, || t.clone()))),
        ("3-record trace has 4 lines of 8 columns", render(&trace).map_err(|e| e.to_string()).and_then(|t| {
            ensure(t.lines().count() == 4 && t.lines().all(|l| l.split(',').count() == 8), || t.clone())
        })),
        ("csv export is deterministic", ensure(render(&trace).ok() == render(&trace).ok(), || "differs".into())),
    ]
}

/// Runs every built-in check.
pub fn run_all() -> Vec<Check> {
    let groups: [(&'static str, Vec<(&'static str, Outcome)>); 6] = [
        ("core", core_checks()),
        ("harmony_search", hs_checks()),
        ("baselines", baseline_checks()),
        ("benchmarks", benchmark_checks()),
        ("music_map", music_checks()),
        ("harness", harness_checks()),
    ];
    groups
        .into_iter()
        .flat_map(|(module, checks)| {
            checks
                .into_iter()
                .map(move |(name, outcome)| Check { module, name, outcome })
        })
        .collect()
}
