//! `mscap` command-line experiment runner.

mod commands;
mod config;
mod error;
mod summary;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "mscap", version, about = "Run and compare MS-CAP optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every (algorithm, problem, dimension, seed) cell of a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rank-sum verdicts of one summary against another, per cell.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Holm-Bonferroni test of a reference algorithm against the rest.
    Rank {
        #[arg(long, num_args = 1.., required = true)]
        summaries: Vec<PathBuf>,
        #[arg(long)]
        reference: String,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
    /// Train the kinematics regression network with MS-CAP.
    TrainNn {
        /// CSV path or synthetic:<none|medium|high>:<rows>
        #[arg(long)]
        data: String,
        #[arg(long)]
        hidden: usize,
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = mscap::config::DEFAULT_BUDGET_MULTIPLIER)]
        budget_multiplier: u64,
        /// Seed for synthetic data and the three-way split.
        #[arg(long, default_value_t = 0)]
        data_seed: u64,
        #[arg(long, default_value = "train-nn-summary.csv")]
        out: PathBuf,
    },
    /// Write a synthetic kinematics dataset.
    GenKin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        noise: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Run { config } => commands::run::run(&config),
        Command::Compare { a, b, alpha } => commands::compare::compare(&a, &b, alpha),
        Command::Rank {
            summaries,
            reference,
            delta,
        } => commands::rank::rank(&summaries, &reference, delta),
        Command::TrainNn {
            data,
            hidden,
            seeds,
            budget_multiplier,
            data_seed,
            out,
        } => commands::train::train_nn(&data, hidden, seeds, budget_multiplier, data_seed, &out),
        Command::GenKin { n, noise, seed, out } => commands::genkin::gen_kin(n, &noise, seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
