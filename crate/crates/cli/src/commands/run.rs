use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use mscap::Problem;
use rayon::prelude::*;

use crate::config::{Cell, Plan};
use crate::error::{CliError, CliResult};
use crate::summary::{write_summary, Status, SummaryRow};

pub const THREADS_VAR: &str = "MSCAP_THREADS";

fn thread_count() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Validation(format!(
                "{THREADS_VAR} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

fn file_component(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' })
        .collect()
}

pub fn trend_path(dir: &Path, algorithm: &str, problem: &str, dim: usize, seed: u64) -> PathBuf {
    dir.join("trends").join(format!(
        "{}__{}__d{dim}__s{seed}.csv",
        file_component(algorithm),
        file_component(problem)
    ))
}

fn run_cell(plan: &Plan, problem: &Problem, cell: &Cell) -> SummaryRow {
    let setup = &plan.algorithms[cell.algorithm];
    let name = plan.problems[cell.problem].name();
    let config = setup.run_config(cell.dimension, cell.seed, plan.max_eval(cell.dimension));
    let trend = trend_path(&plan.output_dir, &setup.label, name, cell.dimension, cell.seed);
    let mut row = SummaryRow {
        problem: name.to_string(),
        dimension: cell.dimension,
        algorithm: setup.label.clone(),
        seed: cell.seed,
        final_error: None,
        final_fitness: None,
        n_eval: 0,
        status: Status::Failed,
    };

    let outcome = catch_unwind(AssertUnwindSafe(|| setup.algorithm.run(problem, &config)));
    let record = match outcome {
        Ok(Ok(record)) => record,
        Ok(Err(e)) => {
            eprintln!("{}: {name} d{} seed {}: {e}", setup.label, cell.dimension, cell.seed);
            let _ = fs::remove_file(&trend);
            return row;
        }
        Err(_) => {
            eprintln!("{}: {name} d{} seed {}: panicked", setup.label, cell.dimension, cell.seed);
            let _ = fs::remove_file(&trend);
            return row;
        }
    };
    if let Err(e) = fs::write(&trend, record.trend_csv()) {
        eprintln!("{}: {e}", trend.display());
        return row;
    }
    row.final_error = record.final_error;
    row.final_fitness = Some(record.best_fitness);
    row.n_eval = record.n_eval;
    row.status = Status::Ok;
    row
}

pub fn run(config_path: &Path) -> CliResult {
    let plan = Plan::load(config_path)?;
    let threads = thread_count()?;

    let mut problems: BTreeMap<(usize, usize), Problem> = BTreeMap::new();
    for (p, spec) in plan.problems.iter().enumerate() {
        for dim in spec.dimensions(&plan.dimensions) {
            problems.insert((p, dim), spec.build(dim, plan.instance_seed)?);
        }
    }

    let trends = plan.output_dir.join("trends");
    fs::create_dir_all(&trends)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", trends.display())))?;

    let cells = plan.cells();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
    let rows: Vec<SummaryRow> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| run_cell(&plan, &problems[&(cell.problem, cell.dimension)], cell))
            .collect()
    });

    let summary = plan.output_dir.join("summary.csv");
    write_summary(&summary, &rows)?;
    let failed = rows.iter().filter(|r| r.status == Status::Failed).count();
    println!("{} runs, {failed} failed; summary in {}", rows.len(), summary.display());
    if failed > 0 {
        return Err(CliError::Runtime(format!("{failed} of {} runs failed", rows.len())));
    }
    Ok(())
}
