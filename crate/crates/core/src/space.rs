//! The feasible box and evaluated points.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HiseaError, Result};

/// An axis-aligned box `lower[i] <= x[i] <= upper[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(HiseaError::InvalidSpace("at least one dimension is required".into()));
        }
        if lower.len() != upper.len() {
            return Err(HiseaError::InvalidSpace(format!(
                "{} lower bounds but {} upper bounds",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(HiseaError::InvalidSpace(format!(
                    "dimension {i}: bounds [{lo}, {hi}] must be finite with lower < upper"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lower, upper]` on every one of `n` dimensions.
    pub fn cube(n: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; n], vec![upper; n])
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

    pub fn width(&self, dim: usize) -> f64 {
        self.upper[dim] - self.lower[dim]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
    }

    /// Checks dimension and bounds, reporting the first violation.
    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(HiseaError::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        for (dim, &value) in x.iter().enumerate() {
            let (lower, upper) = (self.lower[dim], self.upper[dim]);
            if !(lower <= value && value <= upper) {
                return Err(HiseaError::OutOfBounds { dim, value, lower, upper });
            }
        }
        Ok(())
    }
}

/// A point of the search space paired with its fitness value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub x: Vec<f64>,
    pub f: f64,
}

impl Individual {
    pub fn new(x: Vec<f64>, f: f64) -> Self {
        Self { x, f }
    }
}

/// Draws `lo + (hi - lo) * U` with `U ~ U[0, 1)`, kept strictly below `hi`
/// so the sample stays in the half-open cell topology of the grid.
pub(crate) fn uniform_in<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.gen();
    let y = lo + (hi - lo) * u;
    if y >= hi {
        hi.next_down().max(lo)
    } else {
        y
    }
}

/// First generation: `n_f` points drawn uniformly from the box.
pub fn init_population<R: Rng + ?Sized>(space: &SearchSpace, n_f: usize, rng: &mut R) -> Vec<Vec<f64>> {
    (0..n_f)
        .map(|_| {
            space
                .lower
                .iter()
                .zip(&space.upper)
                .map(|(&lo, &hi)| uniform_in(lo, hi, rng))
                .collect()
        })
        .collect()
}
