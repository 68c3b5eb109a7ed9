//! Harmony Search and comparison metaheuristics for box-bounded continuous
//! minimization, with benchmark objectives and a seeded experiment harness.
//!
//! Every optimizer implements [`Optimizer`]: given an [`Objective`] and a
//! 64-bit seed it returns the best solution found, the exact number of
//! objective evaluations, and a per-iteration [`TraceRecord`] stream. Runs
//! with the same seed are bit-identical.
//!
//! ```
//! use harmony_core::{benchmarks, HarmonySearch, HsParams, Optimizer};
//!
//! let objective = benchmarks::rosenbrock_log_spec();
//! let hs = HarmonySearch::new(HsParams { max_iterations: 2_000, ..Default::default() });
//! let outcome = hs.run(&objective, 7).unwrap();
//! assert_eq!(outcome.result.eval_count, 2_020);
//! ```

pub mod baselines;
pub mod benchmarks;
pub mod domain;
pub mod error;
pub mod harness;
pub mod hs;
pub mod music;
pub mod objective;
pub mod rng;
pub mod run;
pub mod selftest;
pub mod trace;

pub use baselines::{
    FaParams, Firefly, GaParams, GeneticAlgorithm, ParticleSwarm, PsoParams, SaParams,
    SimulatedAnnealing,
};
pub use domain::{clamp, uniform_point, Bounds, EvaluatedSolution, SolutionVector};
pub use error::{Error, Result};
pub use hs::{HarmonyMemory, HarmonySearch, HsParams};
pub use objective::{Evaluator, FnObjective, Objective};
pub use rng::RngStream;
pub use run::{Algorithm, Optimizer, RunOutcome, RunResult};
pub use trace::{validate_trace, TraceRecord, TraceRecorder};
