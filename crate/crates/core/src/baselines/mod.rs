//! Comparison metaheuristics sharing the [`Optimizer`](crate::Optimizer)
//! interface with Harmony Search.

pub mod fa;
pub mod ga;
pub mod pso;
pub mod sa;

pub use fa::{fa_attractiveness, FaParams, Firefly};
pub use ga::{relative_fitness, GaParams, GeneticAlgorithm};
pub use pso::{pso_update, ParticleSwarm, PsoParams};
pub use sa::{geometric_cooling, metropolis_accept, sa_accept_probability, SaParams, SimulatedAnnealing};

use crate::domain::Bounds;
use crate::error::{Error, Result};

/// Resolves an optional per-dimension scale, defaulting to a fraction of
/// each dimension's width.
pub(crate) fn resolve_scale(
    name: &'static str,
    scale: &Option<Vec<f64>>,
    default_fraction: f64,
    bounds: &Bounds,
) -> Result<Vec<f64>> {
    match scale {
        None => Ok(bounds.scaled_widths(default_fraction)),
        Some(s) => {
            bounds.check_dims(s.len())?;
            if let Some(bad) = s.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                return Err(Error::param(name, format!("entries must be finite and > 0, got {bad}")));
            }
            Ok(s.clone())
        }
    }
}

pub(crate) fn check_non_negative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite and >= 0, got {v}")))
    }
}

pub(crate) fn check_probability(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::param(name, format!("must lie in [0, 1], got {v}")))
    }
}
