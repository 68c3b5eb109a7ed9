//! Benchmark objectives with known optima and a name-keyed registry.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::domain::{Bounds, SolutionVector};
use crate::error::{Error, Result};
use crate::objective::Objective;

/// Tolerance of the optimum self-consistency check.
pub const OPTIMUM_CHECK_TOLERANCE: f64 = 1e-3;

/// `ln(1 + (1 - x)^2 + 100 (y - x^2)^2)`, minimum 0 at (1, 1).
pub fn rosenbrock_log(x: f64, y: f64) -> f64 {
    let a = 1.0 - x;
    let b = y - x * x;
    (a * a + 100.0 * b * b).ln_1p()
}

/// `-sin(x) sin^20(x^2/pi) - sin(y) sin^20(2 y^2/pi)`.
pub fn michalewicz2(x: f64, y: f64) -> f64 {
    -x.sin() * (x * x / PI).sin().powi(20) - y.sin() * (2.0 * y * y / PI).sin().powi(20)
}

pub fn sphere(point: &[f64]) -> f64 {
    point.iter().map(|c| c * c).sum()
}

/// A registered test function.
#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    name: &'static str,
    bounds: Bounds,
    known_optimum_point: Option<SolutionVector>,
    known_optimum_value: Option<f64>,
    func: fn(&[f64]) -> f64,
}

impl BenchmarkSpec {
    pub fn new(
        name: &'static str,
        bounds: Bounds,
        known_optimum_point: Option<Vec<f64>>,
        known_optimum_value: Option<f64>,
        func: fn(&[f64]) -> f64,
    ) -> Result<Self> {
        let known_optimum_point = known_optimum_point.map(SolutionVector::new).transpose()?;
        if let Some(p) = &known_optimum_point {
            bounds.check_dims(p.len())?;
        }
        Ok(BenchmarkSpec {
            name,
            bounds,
            known_optimum_point,
            known_optimum_value,
            func,
        })
    }

    pub fn known_optimum_point(&self) -> Option<&SolutionVector> {
        self.known_optimum_point.as_ref()
    }

    pub fn known_optimum_value(&self) -> Option<f64> {
        self.known_optimum_value
    }

    /// When both optimum fields are present, the function evaluated at the
    /// point must agree with the value.
    pub fn verify(&self) -> Result<()> {
        if let (Some(p), Some(v)) = (&self.known_optimum_point, self.known_optimum_value) {
            let actual = self.evaluate(p);
            if !((actual - v).abs() <= OPTIMUM_CHECK_TOLERANCE) {
                return Err(Error::InconsistentBenchmark {
                    name: self.name.to_string(),
                    reason: format!("f({:?}) = {actual}, expected {v}", p.as_slice()),
                });
            }
        }
        Ok(())
    }
}

impl Objective for BenchmarkSpec {
    fn name(&self) -> &str {
        self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, point: &[f64]) -> f64 {
        (self.func)(point)
    }
}

fn rosenbrock_log_vec(p: &[f64]) -> f64 {
    rosenbrock_log(p[0], p[1])
}

fn michalewicz2_vec(p: &[f64]) -> f64 {
    michalewicz2(p[0], p[1])
}

pub fn rosenbrock_log_spec() -> BenchmarkSpec {
    BenchmarkSpec::new(
        "rosenbrock_log",
        Bounds::cube(2, -10.0, 10.0).expect("static bounds"),
        Some(vec![1.0, 1.0]),
        Some(0.0),
        rosenbrock_log_vec,
    )
    .expect("static benchmark")
}

pub fn michalewicz2_spec() -> BenchmarkSpec {
    BenchmarkSpec::new(
        "michalewicz2",
        Bounds::cube(2, 0.0, PI).expect("static bounds"),
        Some(vec![2.20319, 1.57049]),
        Some(-1.801),
        michalewicz2_vec,
    )
    .expect("static benchmark")
}

/// Two-dimensional sphere on `[-10, 10]^2`.
pub fn sphere_spec() -> BenchmarkSpec {
    BenchmarkSpec::new(
        "sphere",
        Bounds::cube(2, -10.0, 10.0).expect("static bounds"),
        Some(vec![0.0, 0.0]),
        Some(0.0),
        sphere,
    )
    .expect("static benchmark")
}

/// All registered benchmarks, sorted by name.
pub fn registry() -> &'static [BenchmarkSpec] {
    static REGISTRY: OnceLock<Vec<BenchmarkSpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| vec![michalewicz2_spec(), rosenbrock_log_spec(), sphere_spec()])
}

pub fn lookup(name: &str) -> Result<&'static BenchmarkSpec> {
    registry()
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::UnknownBenchmark(name.to_string()))
}

/// Runs the optimum self-consistency check on every registered benchmark.
pub fn verify_registry() -> Result<()> {
    registry().iter().try_for_each(BenchmarkSpec::verify)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn rosenbrock_log_values() {
        assert_eq!(rosenbrock_log(1.0, 1.0), 0.0);
        assert!((rosenbrock_log(0.0, 0.0) - LN2).abs() < 1e-12);
        assert!((rosenbrock_log(2.0, 4.0) - LN2).abs() < 1e-12);
    }

    #[test]
    fn michalewicz2_values() {
        assert!((michalewicz2(2.20319, 1.57049) - (-1.801)).abs() < 5e-3);
        assert_eq!(michalewicz2(0.0, 0.0), 0.0);
        assert!(michalewicz2(PI, PI).abs() < 1e-9);
    }

    #[test]
    fn sphere_values() {
        assert_eq!(sphere(&[0.0, 0.0]), 0.0);
        assert_eq!(sphere(&[3.0, 4.0]), 25.0);
    }

    #[test]
    fn rosenbrock_log_positive_on_random_grid() {
        let mut rng = RngStream::new(1);
        for _ in 0..10_000 {
            let (x, y) = (rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
            assert!(rosenbrock_log(x, y) > 0.0, "({x}, {y})");
        }
    }

    #[test]
    fn michalewicz2_bounded_below_on_grid() {
        let n = 400;
        for i in 0..=n {
            for j in 0..=n {
                let x = PI * i as f64 / n as f64;
                let y = PI * j as f64 / n as f64;
                assert!(michalewicz2(x, y) >= -2.0);
            }
        }
    }

    #[test]
    fn registry_is_consistent() {
        verify_registry().unwrap();
        let names: Vec<&str> = registry().iter().map(|b| b.name()).collect();
        assert_eq!(names, vec!["michalewicz2", "rosenbrock_log", "sphere"]);
        assert!(lookup("rosenbrock_log").is_ok());
        assert!(matches!(lookup("ackley"), Err(Error::UnknownBenchmark(_))));
    }

    #[test]
    fn verify_detects_wrong_optimum() {
        let bad = BenchmarkSpec::new(
            "bad",
            Bounds::cube(2, -1.0, 1.0).unwrap(),
            Some(vec![0.5, 0.5]),
            Some(0.0),
            sphere,
        )
        .unwrap();
        assert!(matches!(bad.verify(), Err(Error::InconsistentBenchmark { .. })));
    }
}
