use std::path::PathBuf;

use mscap::stats::{holm_bonferroni, score_problems, PerformanceSummary, PerformanceTable};

use super::{cell_name, group_scores, read_summaries};
use crate::error::{CliError, CliResult};
use crate::table::{render, sci};

pub fn rank(summaries: &[PathBuf], reference: &str, delta: f64) -> CliResult {
    let rows = read_summaries(summaries)?;
    let groups = group_scores(&rows);
    if !groups.contains_key(reference) {
        return Err(CliError::Validation(format!(
            "reference algorithm `{reference}` not found in the summaries"
        )));
    }
    let mut table = PerformanceTable::new();
    for (algorithm, cells) in &groups {
        for (cell, values) in cells {
            if values.is_empty() {
                return Err(CliError::Validation(format!(
                    "no successful runs of {algorithm} on {}",
                    cell_name(cell)
                )));
            }
            table.insert(
                cell_name(cell),
                algorithm,
                PerformanceSummary::from_samples(values).expect("non-empty"),
            );
        }
    }
    let scores = score_problems(&table)?;
    let n_problems = table.problems().count();
    let result = holm_bonferroni(&scores, reference, n_problems, delta)?;

    println!(
        "Holm-Bonferroni procedure (reference: {}, rank {:.2})",
        result.reference, result.reference_rank
    );
    println!(
        "N_A = {}, N_TP = {}, delta = {}",
        result.n_algorithms, result.n_problems, result.delta
    );
    let body: Vec<Vec<String>> = result
        .rows
        .iter()
        .map(|r| {
            vec![
                r.j.to_string(),
                r.algorithm.clone(),
                format!("{:.2}", r.rank),
                sci(r.z, 2),
                sci(r.p, 2),
                sci(r.threshold, 2),
                r.decision.to_string(),
            ]
        })
        .collect();
    print!(
        "{}",
        render(&["j", "optimizer", "rank", "z_j", "p_j", "delta/j", "hypothesis"], &body)
    );
    Ok(())
}
