//! Search-space types shared by every optimizer.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Axis-aligned box `[lower[i], upper[i]]` for each dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBounds", into = "RawBounds")]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawBounds> for Bounds {
    type Error = Error;

    fn try_from(raw: RawBounds) -> Result<Self> {
        Bounds::new(raw.lower, raw.upper)
    }
}

impl From<Bounds> for RawBounds {
    fn from(b: Bounds) -> Self {
        RawBounds {
            lower: b.lower,
            upper: b.upper,
        }
    }
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidBounds("zero dimensions".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidBounds(format!(
                    "dimension {i} has non-finite limits [{lo}, {hi}]"
                )));
            }
            if lo >= hi {
                return Err(Error::InvalidBounds(format!(
                    "dimension {i} requires lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Bounds { lower, upper })
    }

    /// The same interval `[lower, upper]` repeated over `dims` dimensions.
    pub fn cube(dims: usize, lower: f64, upper: f64) -> Result<Self> {
        Bounds::new(vec![lower; dims], vec![upper; dims])
    }

    pub fn dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    /// `fraction * (upper[i] - lower[i])` for every dimension.
    pub fn scaled_widths(&self, fraction: f64) -> Vec<f64> {
        (0..self.dims()).map(|i| fraction * self.width(i)).collect()
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dims()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&c, (&lo, &hi))| lo <= c && c <= hi)
    }

    pub fn check_dims(&self, actual: usize) -> Result<()> {
        if actual != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                actual,
            });
        }
        Ok(())
    }

    /// Saturates a single coordinate into dimension `i`.
    #[inline]
    pub fn clamp_component(&self, i: usize, value: f64) -> f64 {
        self.upper[i].min(self.lower[i].max(value))
    }
}

/// A finite point in the search space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SolutionVector(Vec<f64>);

impl SolutionVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = components.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(SolutionVector(components))
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn from_clamped(components: Vec<f64>) -> Self {
        debug_assert!(components.iter().all(|c| c.is_finite()));
        SolutionVector(components)
    }
}

impl Deref for SolutionVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A point paired with its objective value.
///
/// Only constructible by evaluating the objective, so the stored value is
/// never stale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluatedSolution {
    point: SolutionVector,
    value: f64,
}

impl EvaluatedSolution {
    pub(crate) fn new_unchecked(point: SolutionVector, value: f64) -> Self {
        EvaluatedSolution { point, value }
    }

    pub fn point(&self) -> &SolutionVector {
        &self.point
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn into_point(self) -> SolutionVector {
        self.point
    }
}

/// Saturates each component of `point` into `bounds`.
pub fn clamp(point: &[f64], bounds: &Bounds) -> Result<SolutionVector> {
    bounds.check_dims(point.len())?;
    if let Some((index, &value)) = point.iter().enumerate().find(|(_, c)| c.is_nan()) {
        return Err(Error::NonFinite { index, value });
    }
    Ok(SolutionVector(
        point
            .iter()
            .enumerate()
            .map(|(i, &c)| bounds.clamp_component(i, c))
            .collect(),
    ))
}

/// Draws each coordinate independently and uniformly from its interval.
pub fn uniform_point(bounds: &Bounds, rng: &mut RngStream) -> SolutionVector {
    SolutionVector(
        bounds
            .lower()
            .iter()
            .zip(bounds.upper())
            .map(|(&lo, &hi)| rng.uniform(lo, hi))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit(d: usize) -> Bounds {
        Bounds::cube(d, 0.0, 1.0).unwrap()
    }

    #[test]
    fn clamp_saturates_above() {
        assert_eq!(clamp(&[5.0], &unit(1)).unwrap().as_slice(), &[1.0]);
    }

    #[test]
    fn clamp_is_identity_inside() {
        assert_eq!(clamp(&[0.5], &unit(1)).unwrap().as_slice(), &[0.5]);
    }

    #[test]
    fn clamp_acts_per_component() {
        let b = Bounds::cube(2, -1.0, 1.0).unwrap();
        assert_eq!(clamp(&[-3.2, 0.0], &b).unwrap().as_slice(), &[-1.0, 0.0]);
    }

    #[test]
    fn clamp_rejects_mismatch_and_nan() {
        assert!(matches!(
            clamp(&[0.0, 0.0], &unit(1)),
            Err(Error::DimensionMismatch { expected: 1, actual: 2 })
        ));
        assert!(matches!(
            clamp(&[f64::NAN], &unit(1)),
            Err(Error::NonFinite { index: 0, .. })
        ));
    }

    #[test]
    fn infinite_components_saturate() {
        let b = Bounds::cube(2, -1.0, 1.0).unwrap();
        let c = clamp(&[f64::INFINITY, f64::NEG_INFINITY], &b).unwrap();
        assert_eq!(c.as_slice(), &[1.0, -1.0]);
    }

    #[test]
    fn degenerate_bounds_rejected() {
        assert!(matches!(
            Bounds::new(vec![0.0, 0.0], vec![0.0, 0.0]),
            Err(Error::InvalidBounds(_))
        ));
        assert!(Bounds::new(vec![1.0], vec![0.0]).is_err());
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
    }

    #[test]
    fn solution_vector_rejects_non_finite() {
        assert!(SolutionVector::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(SolutionVector::new(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn uniform_point_in_range() {
        let b = Bounds::cube(1, -1.0, 1.0).unwrap();
        let mut rng = RngStream::new(17);
        for _ in 0..1000 {
            let p = uniform_point(&b, &mut rng);
            assert!(b.contains(&p));
        }
    }

    #[test]
    fn uniform_point_mean_on_unit_interval() {
        // 3 sigma = 3 / sqrt(12) / sqrt(1e5) ~ 0.0027; 0.01 leaves slack.
        let b = unit(1);
        let mut rng = RngStream::new(2024);
        let n = 100_000;
        let mean = (0..n).map(|_| uniform_point(&b, &mut rng)[0]).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn bounds_serde_validates() {
        let ok: Bounds = serde_json::from_str(r#"{"lower":[0.0],"upper":[1.0]}"#).unwrap();
        assert_eq!(ok.dims(), 1);
        assert!(serde_json::from_str::<Bounds>(r#"{"lower":[1.0],"upper":[1.0]}"#).is_err());
    }

    proptest! {
        #[test]
        fn clamp_is_idempotent(xs in prop::collection::vec(-1e6f64..1e6, 3)) {
            let b = Bounds::new(vec![-1.0, 0.0, 5.0], vec![1.0, 10.0, 6.0]).unwrap();
            let once = clamp(&xs, &b).unwrap();
            let twice = clamp(&once, &b).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert!(b.contains(&once));
        }
    }
}
