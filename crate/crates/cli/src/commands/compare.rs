use std::path::Path;

use mscap::stats::{wilcoxon_rank_sum, Symbol};

use super::{cell_name, group_scores, read_summaries, CellScores};
use crate::error::{CliError, CliResult};
use crate::table::{render, sci};

fn single_algorithm(path: &Path) -> CliResult<(String, CellScores)> {
    let rows = read_summaries(&[path])?;
    let mut groups = group_scores(&rows);
    if groups.len() != 1 {
        let names: Vec<&String> = groups.keys().collect();
        return Err(CliError::Validation(format!(
            "{}: expected runs of exactly one algorithm, found {names:?}",
            path.display()
        )));
    }
    Ok(groups.pop_first().expect("one group"))
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Per-cell rank-sum verdicts of `a` against `b`; "+" means `a` is better.
pub fn compare(a: &Path, b: &Path, alpha: f64) -> CliResult {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Validation(format!("--alpha must lie in (0, 1), got {alpha}")));
    }
    let (name_a, cells_a) = single_algorithm(a)?;
    let (name_b, cells_b) = single_algorithm(b)?;

    let only_a: Vec<String> = cells_a.keys().filter(|k| !cells_b.contains_key(*k)).map(cell_name).collect();
    let only_b: Vec<String> = cells_b.keys().filter(|k| !cells_a.contains_key(*k)).map(cell_name).collect();
    if !only_a.is_empty() || !only_b.is_empty() {
        return Err(CliError::Validation(format!(
            "cells differ: only in {}: [{}]; only in {}: [{}]",
            a.display(),
            only_a.join(", "),
            b.display(),
            only_b.join(", ")
        )));
    }

    let mut rows = Vec::new();
    let mut totals = [0usize; 3];
    for (cell, va) in &cells_a {
        let vb = &cells_b[cell];
        let verdict = wilcoxon_rank_sum(va, vb, alpha)
            .map_err(|e| CliError::Validation(format!("{}: {e}", cell_name(cell))))?;
        totals[match verdict.symbol {
            Symbol::Minus => 0,
            Symbol::Equals => 1,
            Symbol::Plus => 2,
        }] += 1;
        rows.push(vec![
            cell.0.clone(),
            cell.1.to_string(),
            sci(mean(va), 2),
            sci(mean(vb), 2),
            sci(verdict.p_equal, 2),
            verdict.symbol.to_string(),
        ]);
    }

    println!("a = {name_a} ({}), b = {name_b} ({}), alpha = {alpha}", a.display(), b.display());
    print!(
        "{}",
        render(&["problem", "dimension", "mean_a", "mean_b", "p", "verdict"], &rows)
    );
    println!("total (-/=/+): {}/{}/{}", totals[0], totals[1], totals[2]);
    Ok(())
}
