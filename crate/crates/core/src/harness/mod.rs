//! Experiment orchestration: seeded multi-run execution, summary
//! statistics, trace files and cross-algorithm comparison tables.
//!
//! Output layout under the output directory, per experiment:
//!
//! ```text
//! <algorithm>_<benchmark>/
//!     config.toml          materialized config
//!     results.jsonl        one line per seed, in seed order
//!     summary.json
//!     trace_seed<N>.csv    only with trace_detail = "full"
//! ```

pub mod config;
pub mod export;
pub mod stats;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

pub use config::{AlgorithmParams, Budget, RunConfig, TraceDetail, TraceFormat};
pub use export::{export_trace, export_trace_with_dims};
pub use stats::{SummaryStats, ValueStats};

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::run::{Algorithm, RunOutcome};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "HARMONY_OUTPUT_DIR";
pub const FALLBACK_OUTPUT_DIR: &str = "runs";

/// `explicit`, else `$HARMONY_OUTPUT_DIR`, else `./runs`.
pub fn resolve_output_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(FALLBACK_OUTPUT_DIR))
}

/// Outcome of one seed.
#[derive(Debug)]
pub enum RunRecord {
    Completed(RunOutcome),
    Failed { seed: u64, error: Error },
}

impl RunRecord {
    pub fn seed(&self) -> u64 {
        match self {
            RunRecord::Completed(o) => o.result.seed,
            RunRecord::Failed { seed, .. } => *seed,
        }
    }

    pub fn outcome(&self) -> Option<&RunOutcome> {
        match self {
            RunRecord::Completed(o) => Some(o),
            RunRecord::Failed { .. } => None,
        }
    }
}

#[derive(Debug)]
pub struct Experiment {
    pub config: RunConfig,
    /// In the same order as `config.seeds`.
    pub runs: Vec<RunRecord>,
    pub summary: SummaryStats,
    /// Directory the experiment's files were written to, if any.
    pub output: Option<PathBuf>,
}

impl Experiment {
    pub fn completed(&self) -> impl Iterator<Item = &RunOutcome> {
        self.runs.iter().filter_map(RunRecord::outcome)
    }
}

/// Runs every seed of `config` against `objective` without touching the
/// filesystem. Seeds execute in parallel; each run owns all of its state.
pub fn execute(config: &RunConfig, objective: &dyn Objective) -> Result<Vec<RunRecord>> {
    let optimizer = config.params.optimizer();
    objective.bounds().check_dims(config.benchmark_spec()?.dims())?;
    let ceiling = config.evaluation_ceiling();
    let runs = config
        .seeds
        .par_iter()
        .map(|&seed| match optimizer.run(objective, seed) {
            Ok(outcome) => {
                debug_assert!(outcome.result.eval_count <= ceiling);
                RunRecord::Completed(outcome)
            }
            Err(error) => RunRecord::Failed { seed, error },
        })
        .collect();
    Ok(runs)
}

/// Validates `config`, runs every seed on its registered benchmark, writes
/// results under `output_root` (when given) and summarizes.
pub fn run_experiment_in(config: &RunConfig, output_root: Option<&Path>) -> Result<Experiment> {
    let config = config.clone().validated()?;
    let spec = config.benchmark_spec()?;
    let runs = execute(&config, spec)?;
    let completed: Vec<&RunOutcome> = runs.iter().filter_map(RunRecord::outcome).collect();
    let n_failed = runs.len() - completed.len();
    let summary = SummaryStats::from_runs(&completed, n_failed, config.effective_success_threshold());
    let mut experiment = Experiment {
        config,
        runs,
        summary,
        output: None,
    };
    if let Some(root) = output_root {
        experiment.output = Some(write_outputs(&experiment, root)?);
    }
    Ok(experiment)
}

/// [`run_experiment_in`] with the directory from [`resolve_output_dir`].
pub fn run_experiment(config: &RunConfig) -> Result<Experiment> {
    let root = resolve_output_dir(config.output_dir.as_deref());
    run_experiment_in(config, Some(&root))
}

#[derive(Serialize)]
#[serde(untagged)]
enum ResultLine<'a> {
    Completed(&'a crate::run::RunResult),
    Failed { seed: u64, error: String },
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(contents).map_err(|e| Error::io(path, e))
}

fn write_outputs(experiment: &Experiment, root: &Path) -> Result<PathBuf> {
    let config = &experiment.config;
    let dir = root.join(format!("{}_{}", config.algorithm(), config.benchmark));
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    if let Ok(text) = config.to_toml_string() {
        write_file(&dir.join("config.toml"), text.as_bytes())?;
    }

    let mut results = String::new();
    for run in &experiment.runs {
        let line = match run {
            RunRecord::Completed(o) => ResultLine::Completed(&o.result),
            RunRecord::Failed { seed, error } => ResultLine::Failed {
                seed: *seed,
                error: error.to_string(),
            },
        };
        results.push_str(&serde_json::to_string(&line).expect("result serializes"));
        results.push('\n');
    }
    write_file(&dir.join("results.jsonl"), results.as_bytes())?;

    let summary = serde_json::to_string_pretty(&experiment.summary).expect("summary serializes");
    write_file(&dir.join("summary.json"), summary.as_bytes())?;

    if config.trace_detail == TraceDetail::Full {
        let dims = config.benchmark_spec()?.dims();
        for outcome in experiment.completed() {
            let path = dir.join(format!(
                "trace_seed{}.{}",
                outcome.result.seed,
                config.trace_format.extension()
            ));
            export_trace_with_dims(&outcome.trace, dims, &path, config.trace_format)?;
        }
    }
    Ok(dir)
}

/// One row per configuration, sorted by algorithm name.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonTable {
    pub benchmark: String,
    pub evaluation_budget: u64,
    pub rows: Vec<(Algorithm, SummaryStats)>,
}

const COLUMNS: [&str; 11] = [
    "algorithm",
    "n_runs",
    "n_failed",
    "min",
    "median",
    "mean",
    "max",
    "stddev",
    "success_threshold",
    "success_rate",
    "median_evals_to_threshold",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ComparisonTable {
    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|(alg, s)| {
                let v = s.best_value.as_ref();
                vec![
                    alg.to_string(),
                    s.n_runs.to_string(),
                    s.n_failed.to_string(),
                    opt(v.map(|v| v.min)),
                    opt(v.map(|v| v.median)),
                    opt(v.map(|v| v.mean)),
                    opt(v.map(|v| v.max)),
                    opt(v.map(|v| v.stddev)),
                    opt(s.success_threshold),
                    opt(s.success_rate),
                    opt(s.median_evals_to_threshold),
                ]
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = COLUMNS.join(",");
        out.push('\n');
        for row in self.cells() {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Whitespace-aligned table for terminals.
    pub fn to_text(&self) -> String {
        let cells = self.cells();
        let widths: Vec<usize> = (0..COLUMNS.len())
            .map(|c| cells.iter().map(|r| r[c].len()).chain([COLUMNS[c].len()]).max().unwrap_or(0))
            .collect();
        let mut out = format!("benchmark: {}  evaluation budget: {}\n", self.benchmark, self.evaluation_budget);
        let mut line = |row: Vec<&str>| {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (cell, w))| if i == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
                .collect();
            writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
        };
        line(COLUMNS.to_vec());
        for row in &cells {
            line(row.iter().map(String::as_str).collect());
        }
        out
    }
}

/// Checks that every config targets one benchmark with one evaluation
/// budget. Errors before anything runs.
pub fn check_comparable(configs: &[RunConfig]) -> Result<(String, u64)> {
    let first = configs
        .first()
        .ok_or_else(|| Error::Config("no configs to compare".into()))?;
    let benchmark = first.benchmark.clone();
    let budget = first.evaluation_ceiling();
    for c in &configs[1..] {
        if c.benchmark != benchmark {
            return Err(Error::Config(format!(
                "cannot compare benchmark `{}` with `{benchmark}`",
                c.benchmark
            )));
        }
        if c.evaluation_ceiling() != budget {
            return Err(Error::Config(format!(
                "evaluation budgets differ: {} ({}) vs {budget} ({})",
                c.evaluation_ceiling(),
                c.algorithm(),
                first.algorithm()
            )));
        }
    }
    Ok((benchmark, budget))
}

/// Runs every config and tabulates their summaries.
pub fn compare_algorithms(configs: &[RunConfig], output_root: Option<&Path>) -> Result<ComparisonTable> {
    let configs = configs
        .iter()
        .map(|c| c.clone().validated())
        .collect::<Result<Vec<_>>>()?;
    let (benchmark, evaluation_budget) = check_comparable(&configs)?;
    let mut rows = configs
        .iter()
        .map(|c| run_experiment_in(c, output_root).map(|e| (c.algorithm(), e.summary)))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|(alg, _)| *alg);
    Ok(ComparisonTable {
        benchmark,
        evaluation_budget,
        rows,
    })
}
