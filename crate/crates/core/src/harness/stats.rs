use serde::Serialize;

use crate::run::RunOutcome;

/// Distribution of final best values over completed runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueStats {
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub max: f64,
    /// Sample standard deviation (n - 1); zero for a single run.
    pub stddev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub n_runs: usize,
    pub n_failed: usize,
    pub best_value: Option<ValueStats>,
    pub success_threshold: Option<f64>,
    pub success_rate: Option<f64>,
    /// Median over successful runs of the first evaluation count at which
    /// best-so-far reached the threshold.
    pub median_evals_to_threshold: Option<f64>,
}

pub fn median(sorted: &[f64]) -> Option<f64> {
    let n = sorted.len();
    match n {
        0 => None,
        _ if n % 2 == 1 => Some(sorted[n / 2]),
        _ => Some(0.5 * (sorted[n / 2 - 1] + sorted[n / 2])),
    }
}

impl ValueStats {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        let mean = sorted.iter().sum::<f64>() / n;
        let stddev = if sorted.len() > 1 {
            (sorted.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(ValueStats {
            min: sorted[0],
            median: median(&sorted)?,
            mean,
            max: sorted[sorted.len() - 1],
            stddev,
        })
    }
}

impl SummaryStats {
    /// Summarizes completed runs; `n_failed` counts runs that errored.
    pub fn from_runs(completed: &[&RunOutcome], n_failed: usize, threshold: Option<f64>) -> Self {
        let values: Vec<f64> = completed.iter().map(|o| o.result.best.value()).collect();
        let (success_rate, median_evals_to_threshold) = match threshold {
            Some(t) if !completed.is_empty() => {
                let mut hits: Vec<f64> = completed
                    .iter()
                    .filter_map(|o| {
                        o.trace
                            .iter()
                            .find(|r| r.best_value <= t)
                            .map(|r| r.eval_count as f64)
                    })
                    .collect();
                hits.sort_by(f64::total_cmp);
                (Some(hits.len() as f64 / completed.len() as f64), median(&hits))
            }
            _ => (None, None),
        };
        SummaryStats {
            n_runs: completed.len(),
            n_failed,
            best_value: ValueStats::from_values(&values),
            success_threshold: threshold,
            success_rate,
            median_evals_to_threshold,
        }
    }
}
