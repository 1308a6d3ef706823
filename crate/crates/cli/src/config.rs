//! Experiment configuration files.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use mscap::benchmarks::{make_problem, BenchmarkSpec};
use mscap::config::DEFAULT_BUDGET_MULTIPLIER;
use mscap::neuralnet::{
    load_dataset, mse_objective, split_three_ways, synth_kinematics, weight_count, DataSplit,
    KinDataset, NoiseLevel,
};
use mscap::{Algorithm, Problem, RunConfig};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgorithmEntry>,
    pub problems: Vec<String>,
    #[serde(default)]
    pub dimensions: Vec<usize>,
    pub seeds: SeedSpec,
    #[serde(default = "default_multiplier")]
    pub budget_multiplier: u64,
    pub output_dir: PathBuf,
    /// Seed for benchmark shifts/rotations and dataset generation/splitting.
    #[serde(default)]
    pub instance_seed: u64,
}

fn default_multiplier() -> u64 {
    DEFAULT_BUDGET_MULTIPLIER
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgorithmEntry {
    Id(String),
    Detailed(AlgorithmOverrides),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmOverrides {
    pub id: String,
    /// Label written to the summary; derived from the overrides if absent.
    pub name: Option<String>,
    pub pop_size: Option<usize>,
    pub epsilon: Option<f64>,
    pub gens_ms: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Count(u64),
    List(Vec<u64>),
}

#[derive(Debug, Clone)]
pub struct AlgorithmSetup {
    pub label: String,
    pub algorithm: Algorithm,
    pub pop_size: Option<usize>,
    pub epsilon: Option<f64>,
    pub gens_ms: Option<usize>,
}

impl AlgorithmSetup {
    pub fn run_config(&self, dimension: usize, seed: u64, max_eval: u64) -> RunConfig {
        let mut c = RunConfig::for_dimension(dimension, seed).with_max_eval(max_eval);
        if let Some(n) = self.pop_size {
            c.pop_size = n;
        }
        if let Some(e) = self.epsilon {
            c.epsilon = e;
        }
        if let Some(g) = self.gens_ms {
            c.gens_ms = g;
        }
        c
    }

    fn from_entry(entry: &AlgorithmEntry) -> CliResult<Self> {
        let (id, o) = match entry {
            AlgorithmEntry::Id(id) => (id.as_str(), None),
            AlgorithmEntry::Detailed(o) => (o.id.as_str(), Some(o)),
        };
        let algorithm: Algorithm = id
            .parse()
            .map_err(|e: mscap::Error| CliError::Validation(format!("algorithms: {e}")))?;
        let Some(o) = o else {
            return Ok(Self {
                label: id.to_string(),
                algorithm,
                pop_size: None,
                epsilon: None,
                gens_ms: None,
            });
        };
        let label = o.name.clone().unwrap_or_else(|| {
            let mut parts = Vec::new();
            if let Some(n) = o.pop_size {
                parts.push(format!("pop_size={n}"));
            }
            if let Some(e) = o.epsilon {
                parts.push(format!("epsilon={e:e}"));
            }
            if let Some(g) = o.gens_ms {
                parts.push(format!("gens_ms={g}"));
            }
            if parts.is_empty() {
                id.to_string()
            } else {
                format!("{id}[{}]", parts.join(";"))
            }
        });
        Ok(Self {
            label,
            algorithm,
            pop_size: o.pop_size,
            epsilon: o.epsilon,
            gens_ms: o.gens_ms,
        })
    }
}

/// Where network training rows come from: a CSV file or
/// `synthetic:<noise>:<n>`.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Synthetic { noise: NoiseLevel, rows: usize },
    File(PathBuf),
}

impl DataSource {
    pub fn parse(s: &str) -> CliResult<Self> {
        let Some(rest) = s.strip_prefix("synthetic:") else {
            return Ok(Self::File(PathBuf::from(s)));
        };
        let (noise, rows) = rest.split_once(':').ok_or_else(|| {
            CliError::Validation(format!("`{s}`: expected synthetic:<noise>:<rows>"))
        })?;
        let noise: NoiseLevel = noise.parse()?;
        let rows: usize = rows
            .parse()
            .map_err(|_| CliError::Validation(format!("`{s}`: bad row count `{rows}`")))?;
        if rows < 3 {
            return Err(CliError::Validation(format!(
                "`{s}`: need at least 3 rows to split"
            )));
        }
        Ok(Self::Synthetic { noise, rows })
    }

    pub fn load(&self, seed: u64) -> CliResult<KinDataset> {
        Ok(match self {
            Self::Synthetic { noise, rows } => synth_kinematics(*rows, *noise, seed)?,
            Self::File(path) => load_dataset(path)?,
        })
    }
}

/// Dataset with its train/validation/test split.
pub struct SplitData {
    pub data: Arc<KinDataset>,
    pub split: DataSplit,
}

impl SplitData {
    pub fn load(source: &DataSource, seed: u64) -> CliResult<Self> {
        let data = source.load(seed)?;
        let split = split_three_ways(data.len(), seed)?;
        Ok(Self {
            data: Arc::new(data),
            split,
        })
    }
}

#[derive(Debug, Clone)]
pub enum ProblemSpec {
    Benchmark(String),
    Network {
        descriptor: String,
        hidden: usize,
        source: DataSource,
    },
}

impl ProblemSpec {
    pub fn parse(s: &str) -> CliResult<Self> {
        if let Some(rest) = s.strip_prefix("nn-h") {
            let (hidden, data) = rest.split_once(':').ok_or_else(|| {
                CliError::Validation(format!("problems: `{s}`: expected nn-h<hidden>:<data>"))
            })?;
            let hidden: usize = hidden
                .parse()
                .ok()
                .filter(|&h| h >= 1)
                .ok_or_else(|| {
                    CliError::Validation(format!("problems: `{s}`: hidden must be a positive integer"))
                })?;
            let source = DataSource::parse(data)
                .map_err(|e| CliError::Validation(format!("problems: {e}")))?;
            return Ok(Self::Network {
                descriptor: s.to_string(),
                hidden,
                source,
            });
        }
        BenchmarkSpec::from_name(s, 2)
            .map_err(|e| CliError::Validation(format!("problems: {e}")))?;
        Ok(Self::Benchmark(s.to_string()))
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Benchmark(n) => n,
            Self::Network { descriptor, .. } => descriptor,
        }
    }

    /// Dimensions this problem is run at; network problems have a fixed one.
    pub fn dimensions(&self, configured: &[usize]) -> Vec<usize> {
        match self {
            Self::Benchmark(_) => configured.to_vec(),
            Self::Network { hidden, .. } => vec![weight_count(*hidden)],
        }
    }

    pub fn build(&self, dimension: usize, instance_seed: u64) -> CliResult<Problem> {
        match self {
            Self::Benchmark(name) => Ok(make_problem(name, dimension, instance_seed)?),
            Self::Network { hidden, source, .. } => {
                let d = SplitData::load(source, instance_seed)?;
                Ok(mse_objective(d.data, &d.split.train, *hidden)?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub problem: usize,
    pub dimension: usize,
    pub algorithm: usize,
    pub seed: u64,
}

/// A validated experiment.
#[derive(Debug)]
pub struct Plan {
    pub algorithms: Vec<AlgorithmSetup>,
    pub problems: Vec<ProblemSpec>,
    pub dimensions: Vec<usize>,
    pub seeds: Vec<u64>,
    pub budget_multiplier: u64,
    pub output_dir: PathBuf,
    pub instance_seed: u64,
}

impl Plan {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Validation(m) => CliError::Validation(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let raw: ExperimentConfig = serde_json::from_str(text).map_err(|e| {
            CliError::Validation(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_config(raw)
    }

    pub fn from_config(raw: ExperimentConfig) -> CliResult<Self> {
        let invalid = |m: String| Err(CliError::Validation(m));
        if raw.algorithms.is_empty() {
            return invalid("algorithms: must not be empty".into());
        }
        if raw.problems.is_empty() {
            return invalid("problems: must not be empty".into());
        }
        if raw.budget_multiplier == 0 {
            return invalid("budget_multiplier: must be positive".into());
        }
        let algorithms = raw
            .algorithms
            .iter()
            .map(AlgorithmSetup::from_entry)
            .collect::<CliResult<Vec<_>>>()?;
        for (i, a) in algorithms.iter().enumerate() {
            if algorithms[..i].iter().any(|b| b.label == a.label) {
                return invalid(format!("algorithms: duplicate label `{}`", a.label));
            }
            a.run_config(2, 1, 1)
                .validate(a.algorithm.min_pop_size())
                .map_err(|e| CliError::Validation(format!("algorithms: `{}`: {e}", a.label)))?;
        }
        let problems = raw
            .problems
            .iter()
            .map(|p| ProblemSpec::parse(p))
            .collect::<CliResult<Vec<_>>>()?;
        for (i, p) in problems.iter().enumerate() {
            if problems[..i].iter().any(|q| q.name() == p.name()) {
                return invalid(format!("problems: duplicate entry `{}`", p.name()));
            }
        }
        let needs_dims = problems
            .iter()
            .any(|p| matches!(p, ProblemSpec::Benchmark(_)));
        if needs_dims && raw.dimensions.is_empty() {
            return invalid("dimensions: benchmark problems need at least one dimension".into());
        }
        let mut dimensions = raw.dimensions;
        if let Some(&d) = dimensions.iter().find(|&&d| d < 2) {
            return invalid(format!("dimensions: must be at least 2, got {d}"));
        }
        dimensions.sort_unstable();
        dimensions.dedup();
        let mut seeds = match raw.seeds {
            SeedSpec::Count(0) => return invalid("seeds: count must be positive".into()),
            SeedSpec::Count(k) => (1..=k).collect(),
            SeedSpec::List(list) if list.is_empty() => {
                return invalid("seeds: list must not be empty".into())
            }
            SeedSpec::List(list) => list,
        };
        seeds.sort_unstable();
        seeds.dedup();
        Ok(Self {
            algorithms,
            problems,
            dimensions,
            seeds,
            budget_multiplier: raw.budget_multiplier,
            output_dir: raw.output_dir,
            instance_seed: raw.instance_seed,
        })
    }

    /// Every (problem, dimension, algorithm, seed) cell, in summary order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for (p, problem) in self.problems.iter().enumerate() {
            for dimension in problem.dimensions(&self.dimensions) {
                for a in 0..self.algorithms.len() {
                    for &seed in &self.seeds {
                        cells.push(Cell {
                            problem: p,
                            dimension,
                            algorithm: a,
                            seed,
                        });
                    }
                }
            }
        }
        cells.sort_by(|x, y| {
            (self.problems[x.problem].name(), x.dimension, &self.algorithms[x.algorithm].label, x.seed)
                .cmp(&(
                    self.problems[y.problem].name(),
                    y.dimension,
                    &self.algorithms[y.algorithm].label,
                    y.seed,
                ))
        });
        cells
    }

    pub fn max_eval(&self, dimension: usize) -> u64 {
        self.budget_multiplier * dimension as u64
    }
}
