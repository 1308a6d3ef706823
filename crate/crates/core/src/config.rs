use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-dimension evaluation budget used throughout the benchmark protocol.
pub const DEFAULT_BUDGET_MULTIPLIER: u64 = 5000;

/// Parameters of a single run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Swarm / population size.
    pub pop_size: usize,
    /// Lifetime decay threshold; a particle restarts once `e^-life < epsilon`.
    pub epsilon: f64,
    /// Generations of the multi-strategy stage per activation.
    pub gens_ms: usize,
    pub max_eval: u64,
    pub seed: u64,
}

impl RunConfig {
    /// Defaults: 50 particles, `epsilon = 1e-6`, 3 multi-strategy
    /// generations, `5000 * dimension` evaluations.
    pub fn for_dimension(dimension: usize, seed: u64) -> Self {
        Self {
            pop_size: 50,
            epsilon: 1e-6,
            gens_ms: 3,
            max_eval: DEFAULT_BUDGET_MULTIPLIER * dimension as u64,
            seed,
        }
    }

    pub fn with_max_eval(mut self, max_eval: u64) -> Self {
        self.max_eval = max_eval;
        self
    }

    pub fn with_pop_size(mut self, pop_size: usize) -> Self {
        self.pop_size = pop_size;
        self
    }

    /// Largest lifetime a non-improving particle can reach:
    /// `ceil(-ln epsilon)`.
    pub fn max_age(&self) -> u32 {
        (-self.epsilon.ln()).ceil() as u32
    }

    /// Checks ranges. `min_pop` is algorithm specific.
    pub fn validate(&self, min_pop: usize) -> Result<()> {
        if self.pop_size < min_pop {
            return Err(Error::Config(format!(
                "pop_size must be at least {min_pop}, got {}",
                self.pop_size
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.gens_ms == 0 {
            return Err(Error::Config("gens_ms must be positive".into()));
        }
        if self.max_eval == 0 {
            return Err(Error::Config("max_eval must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::for_dimension(10, 3);
        assert_eq!(c.pop_size, 50);
        assert_eq!(c.epsilon, 1e-6);
        assert_eq!(c.gens_ms, 3);
        assert_eq!(c.max_eval, 50_000);
        assert!(c.validate(6).is_ok());
    }

    #[test]
    fn default_epsilon_gives_max_age_14() {
        assert_eq!(RunConfig::for_dimension(2, 0).max_age(), 14);
    }

    #[test]
    fn invalid_values_rejected() {
        let base = RunConfig::for_dimension(2, 0);
        assert!(base.clone().with_pop_size(5).validate(6).is_err());
        assert!(RunConfig { epsilon: 1.0, ..base.clone() }.validate(6).is_err());
        assert!(RunConfig { epsilon: 0.0, ..base.clone() }.validate(6).is_err());
        assert!(RunConfig { gens_ms: 0, ..base.clone() }.validate(6).is_err());
        assert!(base.with_max_eval(0).validate(6).is_err());
    }
}
