//! Multi-strategy coevolving aging particles (MS-CAP): a derivative-free
//! optimizer alternating an aging particle sweep with a multi-strategy
//! differential evolution stage, plus benchmark landscapes, a plain DE
//! baseline, rank-based comparison statistics and a neural network
//! training objective.
//!
//! ```
//! use mscap::{benchmarks, mscap as algo, RunConfig};
//!
//! let problem = benchmarks::make_problem("sphere", 5, 0).unwrap();
//! let config = RunConfig::for_dimension(5, 1).with_max_eval(2_000);
//! let record = algo::run(&problem, &config).unwrap();
//! assert_eq!(record.n_eval, 2_000);
//! ```

pub mod baseline;
pub mod benchmarks;
pub mod budget;
pub mod config;
pub mod error;
pub mod mscap;
pub mod neuralnet;
pub mod problem;
pub mod record;
pub mod rng;
pub mod stats;
pub mod swarm;

use std::fmt;
use std::str::FromStr;

pub use budget::{Evaluator, NoObserver, RunObserver};
pub use config::RunConfig;
pub use error::{BudgetExhausted, Error, Result};
pub use problem::{Bounds, Problem};
pub use record::{RunRecord, TrendSample};
pub use rng::{RandomSource, RunRng};

/// The optimizers available to experiment runners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Mscap,
    DeRand1Bin,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Mscap, Algorithm::DeRand1Bin];

    pub fn id(self) -> &'static str {
        match self {
            Self::Mscap => mscap::ALGORITHM_ID,
            Self::DeRand1Bin => baseline::ALGORITHM_ID,
        }
    }

    pub fn min_pop_size(self) -> usize {
        match self {
            Self::Mscap => mscap::MIN_POP_SIZE,
            Self::DeRand1Bin => baseline::MIN_POP_SIZE,
        }
    }

    pub fn run(self, problem: &Problem, config: &RunConfig) -> Result<RunRecord> {
        match self {
            Self::Mscap => mscap::run(problem, config),
            Self::DeRand1Bin => baseline::run_de(problem, config),
        }
    }

    pub fn run_observed(
        self,
        problem: &Problem,
        config: &RunConfig,
        observer: &mut dyn RunObserver,
    ) -> Result<RunRecord> {
        match self {
            Self::Mscap => mscap::run_observed(problem, config, observer),
            Self::DeRand1Bin => baseline::run_de_observed(problem, config, observer),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}
