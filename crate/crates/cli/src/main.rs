//! `harmony`: run seeded optimization experiments from TOML configs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use harmony_core::benchmarks;
use harmony_core::harness::{self, RunConfig, RunRecord, OUTPUT_DIR_ENV};
use harmony_core::{selftest, Objective};

#[derive(Parser)]
#[command(name = "harmony", version, about = "Harmony Search and baseline metaheuristics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config over all of its seeds.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Replace the config's seed list with this single seed.
        #[arg(long)]
        seed_override: Option<u64>,
        /// Output directory (overrides the config's `output_dir`).
        #[arg(long, env = OUTPUT_DIR_ENV)]
        out: Option<PathBuf>,
    },
    /// Run several configs on one benchmark and budget and tabulate them.
    Compare {
        #[arg(long, num_args = 1.., required = true)]
        configs: Vec<PathBuf>,
        #[arg(long, env = OUTPUT_DIR_ENV)]
        out: Option<PathBuf>,
    },
    /// List registered benchmarks.
    BenchList,
    /// Run the built-in oracle checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = benchmarks::verify_registry() {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    let result = match cli.command {
        Command::Run { config, seed_override, out } => run(&config, seed_override, out),
        Command::Compare { configs, out } => compare(&configs, out),
        Command::BenchList => {
            bench_list();
            Ok(())
        }
        Command::Selftest => return selftest_cmd(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn output_root(cli_out: Option<PathBuf>, config: &RunConfig) -> PathBuf {
    cli_out.unwrap_or_else(|| harness::resolve_output_dir(config.output_dir.as_deref()))
}

fn run(path: &Path, seed_override: Option<u64>, out: Option<PathBuf>) -> harmony_core::Result<()> {
    let mut config = RunConfig::from_file(path)?;
    if let Some(seed) = seed_override {
        config.seeds = vec![seed];
    }
    let root = output_root(out, &config);
    let experiment = harness::run_experiment_in(&config, Some(&root))?;

    println!(
        "{} on {} ({} seeds, evaluation ceiling {})",
        experiment.config.algorithm(),
        experiment.config.benchmark,
        experiment.config.seeds.len(),
        experiment.config.evaluation_ceiling()
    );
    for run in &experiment.runs {
        match run {
            RunRecord::Completed(o) => println!(
                "  seed {:>20}  best {:<24} at {:?}  evals {}",
                o.result.seed,
                o.result.best.value(),
                o.result.best.point().as_slice(),
                o.result.eval_count
            ),
            RunRecord::Failed { seed, error } => println!("  seed {seed:>20}  FAILED: {error}"),
        }
    }
    let s = &experiment.summary;
    if let Some(v) = &s.best_value {
        println!(
            "best value: min {} median {} mean {} max {} stddev {}",
            v.min, v.median, v.mean, v.max, v.stddev
        );
    }
    if let (Some(t), Some(rate)) = (s.success_threshold, s.success_rate) {
        println!("success rate (best <= {t}): {rate}");
    }
    if let Some(dir) = &experiment.output {
        println!("wrote {}", dir.display());
    }
    if s.n_runs == 0 {
        return Err(harmony_core::Error::Config("every run failed".into()));
    }
    Ok(())
}

fn compare(paths: &[PathBuf], out: Option<PathBuf>) -> harmony_core::Result<()> {
    let configs = paths
        .iter()
        .map(|p| RunConfig::from_file(p))
        .collect::<harmony_core::Result<Vec<_>>>()?;
    harness::check_comparable(&configs)?;
    let root = output_root(out, &configs[0]);
    let table = harness::compare_algorithms(&configs, Some(&root))?;
    std::fs::create_dir_all(&root).map_err(|e| io_err(&root, e))?;
    let csv_path = root.join(format!("comparison_{}.csv", table.benchmark));
    std::fs::write(&csv_path, table.to_csv()).map_err(|e| io_err(&csv_path, e))?;
    print!("{}", table.to_text());
    println!("wrote {}", csv_path.display());
    Ok(())
}

fn io_err(path: &Path, source: std::io::Error) -> harmony_core::Error {
    harmony_core::Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn bench_list() {
    for b in benchmarks::registry() {
        let bounds = b.bounds();
        let domain: Vec<String> = bounds
            .lower()
            .iter()
            .zip(bounds.upper())
            .map(|(lo, hi)| format!("[{lo}, {hi}]"))
            .collect();
        let optimum = match (b.known_optimum_value(), b.known_optimum_point()) {
            (Some(v), Some(p)) => format!("f* = {v} at {:?}", p.as_slice()),
            (Some(v), None) => format!("f* = {v}"),
            _ => "unknown optimum".to_string(),
        };
        println!("{:<16} d={}  {}  {}", b.name(), b.dims(), domain.join(" x "), optimum);
    }
}

fn selftest_cmd() -> ExitCode {
    let checks = selftest::run_all();
    let mut failed = 0;
    for c in &checks {
        match &c.outcome {
            Ok(()) => println!("PASS  {:<16} {}", c.module, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:<16} {}: {why}", c.module, c.name);
            }
        }
    }
    println!("{} checks, {} failed", checks.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
