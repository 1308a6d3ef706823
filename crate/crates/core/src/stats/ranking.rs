//! Per-problem scoring of algorithms and the Holm-Bonferroni procedure over
//! their average scores.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::stats::normal_cdf;

/// Mean and standard deviation of an algorithm's final errors on a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerformanceSummary {
    pub mean: f64,
    pub std: f64,
}

impl PerformanceSummary {
    /// Sample mean and (n - 1) standard deviation; `std = 0` for one value.
    pub fn from_samples(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(Self { mean, std })
    }
}

/// Problem x algorithm grid of performance summaries.
#[derive(Debug, Clone, Default)]
pub struct PerformanceTable {
    cells: BTreeMap<String, BTreeMap<String, PerformanceSummary>>,
    algorithms: BTreeSet<String>,
}

impl PerformanceTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        problem: impl Into<String>,
        algorithm: impl Into<String>,
        summary: PerformanceSummary,
    ) {
        let algorithm = algorithm.into();
        self.algorithms.insert(algorithm.clone());
        self.cells
            .entry(problem.into())
            .or_default()
            .insert(algorithm, summary);
    }

    pub fn problems(&self) -> impl Iterator<Item = &str> {
        self.cells.keys().map(String::as_str)
    }

    pub fn algorithms(&self) -> impl Iterator<Item = &str> {
        self.algorithms.iter().map(String::as_str)
    }

    pub fn get(&self, problem: &str, algorithm: &str) -> Option<PerformanceSummary> {
        self.cells.get(problem)?.get(algorithm).copied()
    }

    /// Every `(problem, algorithm)` pair without a summary.
    pub fn holes(&self) -> Vec<(String, String)> {
        let mut holes = Vec::new();
        for (problem, row) in &self.cells {
            for alg in &self.algorithms {
                if !row.contains_key(alg) {
                    holes.push((problem.clone(), alg.clone()));
                }
            }
        }
        holes
    }
}

/// Scores for one problem, aligned with `entries`. The best entry scores
/// `N_A`, the worst 1. Entries are ordered by mean, then standard deviation,
/// then name; entries equal in both mean and deviation share the average
/// of the scores they span.
pub fn problem_scores(entries: &[(&str, PerformanceSummary)]) -> Vec<f64> {
    let n = entries.len();
    let mut order: Vec<usize> = (0..n).collect();
    let key = |k: usize| entries[k].1;
    order.sort_by(|&i, &j| {
        key(i)
            .mean
            .total_cmp(&key(j).mean)
            .then(key(i).std.total_cmp(&key(j).std))
            .then(entries[i].0.cmp(entries[j].0))
    });
    let mut scores = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && key(order[end]) == key(order[start]) {
            end += 1;
        }
        // positions start..end score n - start down to n - end + 1
        let shared = (2 * n - start - end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            scores[k] = shared;
        }
        start = end;
    }
    scores
}

/// Average score of every algorithm over all problems of `table`.
pub fn score_problems(table: &PerformanceTable) -> Result<BTreeMap<String, f64>> {
    if let Some((problem, alg)) = table.holes().into_iter().next() {
        return Err(Error::Statistics(format!(
            "missing result for algorithm `{alg}` on problem `{problem}`"
        )));
    }
    let n_problems = table.cells.len();
    if n_problems == 0 {
        return Err(Error::Statistics("no problems to score".into()));
    }
    let mut totals: BTreeMap<String, f64> =
        table.algorithms.iter().map(|a| (a.clone(), 0.0)).collect();
    for row in table.cells.values() {
        let entries: Vec<(&str, PerformanceSummary)> =
            row.iter().map(|(a, s)| (a.as_str(), *s)).collect();
        for ((alg, _), score) in entries.iter().zip(problem_scores(&entries)) {
            *totals.get_mut(*alg).unwrap() += score;
        }
    }
    Ok(totals
        .into_iter()
        .map(|(a, t)| (a, t / n_problems as f64))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Rejected,
    Accepted,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rejected => "Rejected",
            Self::Accepted => "Accepted",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub j: usize,
    pub algorithm: String,
    pub rank: f64,
    pub z: f64,
    pub p: f64,
    pub threshold: f64,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub reference: String,
    pub reference_rank: f64,
    pub n_algorithms: usize,
    pub n_problems: usize,
    pub delta: f64,
    pub rows: Vec<RankRow>,
}

/// `(R_j - R_0) / sqrt(N_A (N_A + 1) / (6 N_TP))`.
pub fn holm_z(rank: f64, reference_rank: f64, n_algorithms: usize, n_problems: usize) -> f64 {
    let na = n_algorithms as f64;
    (rank - reference_rank) / (na * (na + 1.0) / (6.0 * n_problems as f64)).sqrt()
}

/// Holm-Bonferroni procedure with `reference` as the control algorithm.
///
/// Opponents are sorted by descending average rank. `p_j` is the lower
/// normal tail at `z_j`; hypotheses are rejected while `p_j < delta / j`,
/// and the first acceptance accepts every later one.
pub fn holm_bonferroni(
    ranks: &BTreeMap<String, f64>,
    reference: &str,
    n_problems: usize,
    delta: f64,
) -> Result<RankTable> {
    let reference_rank = *ranks
        .get(reference)
        .ok_or_else(|| Error::Statistics(format!("unknown reference algorithm `{reference}`")))?;
    let n_algorithms = ranks.len();
    if n_algorithms < 2 {
        return Err(Error::Statistics("need at least two algorithms".into()));
    }
    if n_problems == 0 {
        return Err(Error::Statistics("need at least one problem".into()));
    }

    let mut opponents: Vec<(&String, f64)> = ranks
        .iter()
        .filter(|(a, _)| a.as_str() != reference)
        .map(|(a, r)| (a, *r))
        .collect();
    opponents.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(y.0)));

    let mut rejecting = true;
    let rows = opponents
        .into_iter()
        .enumerate()
        .map(|(idx, (alg, rank))| {
            let j = idx + 1;
            let z = holm_z(rank, reference_rank, n_algorithms, n_problems);
            let p = normal_cdf(z);
            let threshold = delta / j as f64;
            rejecting = rejecting && p < threshold;
            RankRow {
                j,
                algorithm: alg.clone(),
                rank,
                z,
                p,
                threshold,
                decision: if rejecting {
                    Decision::Rejected
                } else {
                    Decision::Accepted
                },
            }
        })
        .collect();

    Ok(RankTable {
        reference: reference.to_string(),
        reference_rank,
        n_algorithms,
        n_problems,
        delta,
        rows,
    })
}
