use serde::{Deserialize, Serialize};

use crate::error::{HiseaError, Result};

/// Parameters of one optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Size of the first, uniformly random generation.
    pub n_f: usize,
    /// Grid cells per dimension.
    pub n_p: usize,
    /// Capacity of the pool of good genetics.
    pub n_g: usize,
    /// Base offspring count; each operator emits a fixed multiple of it.
    pub n_s: usize,
    pub max_loops: usize,
    /// Stop once consecutive pools' quantile matrices are this close.
    pub epsilon: f64,
    pub quantile_levels: Vec<f64>,
    pub seed: u64,
}

/// `0.05, 0.10, ..., 0.95`.
pub fn default_quantile_levels() -> Vec<f64> {
    (1..20).map(|k| k as f64 / 20.0).collect()
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::paper()
    }
}

impl RunConfig {
    /// Full-size parameters: `N_f = N_g = N_s = 5000`, 300 cells, 300 loops.
    pub fn paper() -> Self {
        Self {
            n_f: 5000,
            n_p: 300,
            n_g: 5000,
            n_s: 5000,
            max_loops: 300,
            epsilon: 1.0e-9,
            quantile_levels: default_quantile_levels(),
            seed: 0,
        }
    }

    /// Reduced profile that finishes a 30-dimensional run in seconds.
    pub fn desk() -> Self {
        Self {
            n_f: 500,
            n_p: 100,
            n_g: 500,
            n_s: 200,
            max_loops: 60,
            ..Self::paper()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("n_f", self.n_f),
            ("n_p", self.n_p),
            ("n_g", self.n_g),
            ("n_s", self.n_s),
        ];
        for (name, value) in positive {
            if value == 0 {
                return Err(HiseaError::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(HiseaError::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.quantile_levels.is_empty() {
            return Err(HiseaError::InvalidConfig("at least one quantile level is required".into()));
        }
        if !self.quantile_levels.iter().all(|&a| a > 0.0 && a < 1.0) {
            return Err(HiseaError::InvalidConfig("quantile levels must lie in (0, 1)".into()));
        }
        if !self.quantile_levels.windows(2).all(|w| w[0] < w[1]) {
            return Err(HiseaError::InvalidConfig("quantile levels must be strictly increasing".into()));
        }
        Ok(())
    }
}
