pub mod compare;
pub mod genkin;
pub mod rank;
pub mod run;
pub mod train;

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, CliResult};
use crate::summary::{read_summary, SummaryRow};

/// Successful scores per (problem, dimension) cell of one algorithm.
pub type CellScores = BTreeMap<(String, usize), Vec<f64>>;

/// Reads summaries and rejects rows repeating an (algorithm, cell, seed).
pub fn read_summaries<P: AsRef<Path>>(paths: &[P]) -> CliResult<Vec<SummaryRow>> {
    let mut seen = BTreeMap::new();
    let mut rows = Vec::new();
    for path in paths {
        let path = path.as_ref();
        for row in read_summary(path)? {
            let key = (row.algorithm.clone(), row.problem.clone(), row.dimension, row.seed);
            if let Some(first) = seen.insert(key, path.display().to_string()) {
                return Err(CliError::Validation(format!(
                    "{}: duplicate run {} on {}@{} seed {} (also in {first})",
                    path.display(),
                    row.algorithm,
                    row.problem,
                    row.dimension,
                    row.seed
                )));
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Groups scores by algorithm and cell. Cells where every run failed still
/// appear, with no values.
pub fn group_scores(rows: &[SummaryRow]) -> BTreeMap<String, CellScores> {
    let mut out: BTreeMap<String, CellScores> = BTreeMap::new();
    for row in rows {
        let cell = out
            .entry(row.algorithm.clone())
            .or_default()
            .entry(row.cell())
            .or_default();
        cell.extend(row.score());
    }
    out
}

pub fn cell_name((problem, dim): &(String, usize)) -> String {
    format!("{problem}@{dim}")
}
