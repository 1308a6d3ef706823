use std::path::Path;

use mscap::neuralnet::{mse, mse_objective, weight_count, FFNetwork};
use mscap::{Algorithm, RunConfig};

use crate::config::{DataSource, SplitData};
use crate::error::{CliError, CliResult};
use crate::table::{render, sci};

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (m, 0.0);
    }
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, var.sqrt())
}

pub fn train_nn(
    data: &str,
    hidden: usize,
    seeds: u64,
    multiplier: u64,
    data_seed: u64,
    out: &Path,
) -> CliResult {
    if hidden == 0 {
        return Err(CliError::Validation("--hidden must be at least 1".into()));
    }
    if seeds == 0 {
        return Err(CliError::Validation("--seeds must be at least 1".into()));
    }
    if multiplier == 0 {
        return Err(CliError::Validation("--budget-multiplier must be positive".into()));
    }
    let source = DataSource::parse(data)?;
    let SplitData { data: dataset, split } = SplitData::load(&source, data_seed)?;
    let problem = mse_objective(dataset.clone(), &split.train, hidden)?;
    let dim = weight_count(hidden);
    let max_eval = multiplier * dim as u64;
    println!(
        "data {data}: {} rows (train {}, validation {}, test {}); hidden {hidden}, D = {dim}, budget {max_eval}",
        dataset.len(),
        split.train.len(),
        split.validation.len(),
        split.test.len()
    );

    let mut writer = csv::Writer::from_path(out)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", out.display())))?;
    let io = |e: csv::Error| CliError::Runtime(format!("{}: {e}", out.display()));
    writer
        .write_record(["seed", "train_mse", "validation_mse", "test_mse", "n_eval"])
        .map_err(io)?;

    let mut results: [Vec<f64>; 3] = Default::default();
    for seed in 1..=seeds {
        let config = RunConfig::for_dimension(dim, seed).with_max_eval(max_eval);
        let record = Algorithm::Mscap
            .run(&problem, &config)
            .map_err(|e| CliError::Runtime(format!("seed {seed}: {e}")))?;
        let net = FFNetwork::decode(&record.best_x, hidden)?;
        let errs = [
            mse(&net, &dataset, &split.train),
            mse(&net, &dataset, &split.validation),
            mse(&net, &dataset, &split.test),
        ];
        for (r, e) in results.iter_mut().zip(errs) {
            r.push(e);
        }
        writer
            .write_record([
                seed.to_string(),
                format!("{:e}", errs[0]),
                format!("{:e}", errs[1]),
                format!("{:e}", errs[2]),
                record.n_eval.to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush()?;

    let zero = FFNetwork::zeros(hidden)?;
    let names = ["train", "validation", "test"];
    let parts = [&split.train, &split.validation, &split.test];
    let rows: Vec<Vec<String>> = names
        .iter()
        .zip(&results)
        .zip(parts)
        .map(|((name, r), idx)| {
            let (m, s) = mean_std(r);
            vec![
                name.to_string(),
                format!("{} ± {}", sci(m, 4), sci(s, 4)),
                sci(mse(&zero, &dataset, idx), 4),
            ]
        })
        .collect();
    print!("{}", render(&["split", "mse (mean ± std)", "zero network"], &rows));
    println!("{seeds} seeds; per-seed results in {}", out.display());
    Ok(())
}
