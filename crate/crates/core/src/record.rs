//! Run records and fitness-trend logging.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::budget::EvaluationSummary;
use crate::config::RunConfig;

/// Number of evenly spaced trend samples aimed for over a full budget.
pub const TREND_RESOLUTION: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendSample {
    pub n_eval: u64,
    pub best_fitness: f64,
}

/// Records `(n_eval, best)` at every improvement and at every multiple of
/// `ceil(max_eval / 500)` evaluations. Samples are strictly increasing in
/// `n_eval`; a second sample at the same count overwrites the first.
#[derive(Debug, Clone)]
pub struct TrendLog {
    period: u64,
    samples: Vec<TrendSample>,
}

impl TrendLog {
    pub fn new(max_eval: u64) -> Self {
        Self {
            period: max_eval.div_ceil(TREND_RESOLUTION).max(1),
            samples: Vec::new(),
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn observe(&mut self, n_eval: u64, best_fitness: f64, improved: bool) {
        if improved || n_eval.is_multiple_of(self.period) {
            self.push(n_eval, best_fitness);
        }
    }

    fn push(&mut self, n_eval: u64, best_fitness: f64) {
        match self.samples.last_mut() {
            Some(last) if last.n_eval == n_eval => last.best_fitness = best_fitness,
            _ => self.samples.push(TrendSample {
                n_eval,
                best_fitness,
            }),
        }
    }

    /// Appends the final state so the last sample is the run's result.
    pub fn finish(mut self, n_eval: u64, best_fitness: f64) -> Vec<TrendSample> {
        self.push(n_eval, best_fitness);
        self.samples
    }
}

/// Outcome of one seeded run of one algorithm on one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub dimension: usize,
    pub seed: u64,
    pub config: RunConfig,
    pub best_x: Vec<f64>,
    pub best_fitness: f64,
    /// `max(0, best_fitness - optimum)` when the optimum is known.
    pub final_error: Option<f64>,
    pub n_eval: u64,
    pub non_finite_evals: u64,
    pub trend: Vec<TrendSample>,
}

impl RunRecord {
    pub fn new(
        algorithm: impl Into<String>,
        problem: &crate::problem::Problem,
        config: &RunConfig,
        summary: EvaluationSummary,
    ) -> Self {
        let final_error = problem
            .known_optimum()
            .map(|opt| error_against(summary.best_fitness, opt));
        Self {
            algorithm: algorithm.into(),
            problem: problem.name().to_string(),
            dimension: problem.dimension(),
            seed: config.seed,
            config: config.clone(),
            best_x: summary.best_x,
            best_fitness: summary.best_fitness,
            final_error,
            n_eval: summary.n_eval,
            non_finite_evals: summary.non_finite_evals,
            trend: summary.trend,
        }
    }

    /// Trend as CSV with header `n_eval,best_fitness`.
    pub fn trend_csv(&self) -> String {
        let mut out = String::from("n_eval,best_fitness\n");
        for s in &self.trend {
            writeln!(out, "{},{:e}", s.n_eval, s.best_fitness).unwrap();
        }
        out
    }
}

/// Fitness error, clamped at zero against round-off below the optimum.
pub fn error_against(fitness: f64, optimum: f64) -> f64 {
    (fitness - optimum).max(0.0)
}
