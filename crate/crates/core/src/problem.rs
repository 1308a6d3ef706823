//! Box-constrained minimization problems.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Axis-aligned search box. Wrapped positions live in `[lower, upper)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidBounds("dimension must be positive".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidBounds(format!(
                "lower has {} entries, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidBounds(format!(
                    "dimension {j}: need finite lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// Same interval `[lo, hi]` on every one of `dim` coordinates.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    /// Whether `x` lies in the half-open box `[lower, upper)`.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v < hi)
    }

    /// Uniform point in the box.
    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut x: Vec<f64> = (0..self.dim())
            .map(|j| self.lower[j] + self.width(j) * rng.next_f64())
            .collect();
        // lo + w*u can round up to hi
        self.wrap_in_place(&mut x)
            .expect("sampled coordinates are finite");
        x
    }

    /// Toroidal wrap of every coordinate into `[lower, upper)`.
    pub fn wrap(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = x.to_vec();
        self.wrap_in_place(&mut out)?;
        Ok(out)
    }

    pub fn wrap_in_place(&self, x: &mut [f64]) -> Result<()> {
        debug_assert_eq!(x.len(), self.dim());
        for (j, v) in x.iter_mut().enumerate() {
            *v = wrap_coordinate(*v, self.lower[j], self.upper[j])
                .ok_or(Error::NonFinitePosition { index: j, value: *v })?;
        }
        Ok(())
    }
}

/// Maps `value` into `[lo, hi)` modulo the range width. An overshoot of
/// `zeta` past `hi` lands at `lo + zeta`, and symmetrically below `lo`.
/// Values already inside are returned untouched.
pub fn wrap_coordinate(value: f64, lo: f64, hi: f64) -> Option<f64> {
    if !value.is_finite() {
        return None;
    }
    if lo <= value && value < hi {
        return Some(value);
    }
    let width = hi - lo;
    let offset = (value - lo).rem_euclid(width);
    let wrapped = lo + offset;
    // rounding can push the result onto the excluded upper edge
    if wrapped >= hi || wrapped < lo {
        Some(lo)
    } else {
        Some(wrapped)
    }
}

pub type ObjectiveFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A minimization problem: search box plus objective.
#[derive(Clone)]
pub struct Problem {
    name: String,
    bounds: Bounds,
    objective: Arc<ObjectiveFn>,
    known_optimum: Option<f64>,
}

impl Problem {
    pub fn new<F>(name: impl Into<String>, bounds: Bounds, objective: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            bounds,
            objective: Arc::new(objective),
            known_optimum: None,
        }
    }

    /// Records the global optimum fitness, which enables error reporting.
    pub fn with_known_optimum(mut self, optimum: f64) -> Self {
        self.known_optimum = Some(optimum);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn known_optimum(&self) -> Option<f64> {
        self.known_optimum
    }

    /// Raw objective call. Does not touch any budget; algorithms go through
    /// [`crate::budget::Evaluator`].
    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("known_optimum", &self.known_optimum)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box10() -> Bounds {
        Bounds::uniform(1, 0.0, 10.0).unwrap()
    }

    #[test]
    fn rejects_degenerate_bounds() {
        assert!(Bounds::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![f64::NEG_INFINITY], vec![0.0]).is_err());
    }

    #[test]
    fn wrap_single_overshoot_above() {
        assert_eq!(box10().wrap(&[11.0]).unwrap(), vec![1.0]);
    }

    #[test]
    fn wrap_single_overshoot_below() {
        assert_eq!(box10().wrap(&[-3.0]).unwrap(), vec![7.0]);
    }

    #[test]
    fn wrap_multiple_widths_matches_repeated_single_steps() {
        // oracle: apply the one-step rule until inside
        fn stepwise(mut v: f64, lo: f64, hi: f64) -> f64 {
            while v >= hi {
                v = lo + (v - hi);
            }
            while v < lo {
                v = hi - (lo - v);
            }
            v
        }
        assert_eq!(stepwise(25.0, 0.0, 10.0), 5.0);
        assert_eq!(box10().wrap(&[25.0]).unwrap(), vec![5.0]);
        for &v in &[25.0, -17.5, 10.0, 39.25, -0.5, 100.0] {
            assert_eq!(box10().wrap(&[v]).unwrap()[0], stepwise(v, 0.0, 10.0), "v = {v}");
        }
    }

    #[test]
    fn upper_edge_wraps_to_lower() {
        assert_eq!(box10().wrap(&[10.0]).unwrap(), vec![0.0]);
    }

    #[test]
    fn inside_is_untouched() {
        let b = Bounds::uniform(3, -5.12, 5.12).unwrap();
        let x = [0.1, -5.12, 5.119_999];
        assert_eq!(b.wrap(&x).unwrap(), x.to_vec());
    }

    #[test]
    fn non_finite_is_an_error() {
        let err = box10().wrap(&[f64::NAN]).unwrap_err();
        assert!(matches!(err, Error::NonFinitePosition { index: 0, .. }));
        assert!(box10().wrap(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn tiny_negative_overshoot_stays_half_open() {
        let w = box10().wrap(&[-1e-300]).unwrap()[0];
        assert!((0.0..10.0).contains(&w));
    }
}
