//! The per-experiment summary CSV.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 8] = [
    "problem",
    "dimension",
    "algorithm",
    "seed",
    "final_error",
    "final_fitness",
    "n_eval",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ok => "ok",
            Self::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub dimension: usize,
    pub algorithm: String,
    pub seed: u64,
    pub final_error: Option<f64>,
    pub final_fitness: Option<f64>,
    pub n_eval: u64,
    pub status: Status,
}

impl SummaryRow {
    /// The value compared across algorithms: the error when the optimum is
    /// known, the raw fitness otherwise. `None` for failed runs.
    pub fn score(&self) -> Option<f64> {
        match self.status {
            Status::Ok => self.final_error.or(self.final_fitness),
            Status::Failed => None,
        }
    }

    pub fn cell(&self) -> (String, usize) {
        (self.problem.clone(), self.dimension)
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:e}")).unwrap_or_default()
}

pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> CliResult {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| CliError::Runtime(format!("{}: {e}", path.display()));
    w.write_record(HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.problem.clone(),
            r.dimension.to_string(),
            r.algorithm.clone(),
            r.seed.to_string(),
            opt(r.final_error),
            opt(r.final_fitness),
            r.n_eval.to_string(),
            r.status.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_summary(path: &Path) -> CliResult<Vec<SummaryRow>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let header = reader
        .headers()
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    if !header.iter().eq(HEADER) {
        return Err(CliError::Validation(format!(
            "{}: line 1: expected header `{}`",
            path.display(),
            HEADER.join(",")
        )));
    }
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        let row: SummaryRow = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::Validation(format!("{}: line {line}: {e}", path.display()))
        })?;
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_empty_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let rows = vec![
            SummaryRow {
                problem: "sphere".into(),
                dimension: 10,
                algorithm: "mscap".into(),
                seed: 1,
                final_error: Some(1.5e-25),
                final_fitness: Some(1.5e-25),
                n_eval: 50000,
                status: Status::Ok,
            },
            SummaryRow {
                problem: "nn-h3:synthetic:none:90".into(),
                dimension: 27,
                algorithm: "mscap".into(),
                seed: 2,
                final_error: None,
                final_fitness: None,
                n_eval: 0,
                status: Status::Failed,
            },
        ];
        write_summary(&path, &rows).unwrap();
        assert_eq!(read_summary(&path).unwrap(), rows);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("sphere,10,mscap,1,1.5e-25,1.5e-25,50000,ok"));
        assert!(text.contains(",2,,,0,failed"));
    }

    #[test]
    fn score_falls_back_to_fitness() {
        let mut r = SummaryRow {
            problem: "p".into(),
            dimension: 2,
            algorithm: "a".into(),
            seed: 1,
            final_error: None,
            final_fitness: Some(0.25),
            n_eval: 10,
            status: Status::Ok,
        };
        assert_eq!(r.score(), Some(0.25));
        r.final_error = Some(0.0);
        assert_eq!(r.score(), Some(0.0));
        r.status = Status::Failed;
        assert_eq!(r.score(), None);
    }

    #[test]
    fn wrong_header_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_summary(&path), Err(CliError::Validation(_))));
    }
}
