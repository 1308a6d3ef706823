//! Plain DE/rand/1/bin with fixed `F = 0.5`, `CR = 0.9`, used as the
//! comparison opponent for MS-CAP.

use crate::budget::{Evaluator, NoObserver, RunObserver};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::mscap::{de_crossover, CrossoverStrategy};
use crate::problem::Problem;
use crate::record::RunRecord;
use crate::rng::{RandomSource, RunRng};

pub const ALGORITHM_ID: &str = "de-rand1-bin";
pub const SCALE_FACTOR: f64 = 0.5;
pub const CROSSOVER_RATE: f64 = 0.9;
pub const MIN_POP_SIZE: usize = 4;

/// Three distinct indices in `0..n`, none equal to `target`.
fn draw_three<R: RandomSource + ?Sized>(target: usize, n: usize, rng: &mut R) -> [usize; 3] {
    let mut pool: Vec<usize> = (0..n).filter(|&k| k != target).collect();
    let mut out = [0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let pick = k + rng.below(pool.len() - k);
        pool.swap(k, pick);
        *slot = pool[k];
    }
    out
}

pub fn run_de(problem: &Problem, config: &RunConfig) -> Result<RunRecord> {
    run_de_observed(problem, config, &mut NoObserver)
}

/// Generational DE: trials are built from the population as it stood at the
/// start of the generation and replace their parent on strict improvement.
pub fn run_de_observed(
    problem: &Problem,
    config: &RunConfig,
    observer: &mut dyn RunObserver,
) -> Result<RunRecord> {
    config.validate(MIN_POP_SIZE)?;
    let mut rng = RunRng::seed_from(config.seed);
    let mut ev = Evaluator::new(problem, config.max_eval).with_observer(observer);
    let bounds = problem.bounds();
    let n = config.pop_size;

    let mut pop: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n);
    for _ in 0..n {
        let x = bounds.sample(&mut rng);
        match ev.evaluate(&x) {
            Ok(f) => pop.push((x, f)),
            Err(_) => break,
        }
    }

    'outer: while !ev.is_exhausted() {
        let old = pop.clone();
        for i in 0..n {
            let [r, s, t] = draw_three(i, n, &mut rng);
            let mutant: Vec<f64> = (0..bounds.dim())
                .map(|j| old[r].0[j] + SCALE_FACTOR * (old[s].0[j] - old[t].0[j]))
                .collect();
            let mut trial = de_crossover(
                CrossoverStrategy::Binomial,
                &old[i].0,
                &mutant,
                CROSSOVER_RATE,
                &mut rng,
            );
            bounds.wrap_in_place(&mut trial)?;
            let f = match ev.evaluate(&trial) {
                Ok(f) => f,
                Err(_) => break 'outer,
            };
            if f < old[i].1 {
                pop[i] = (trial, f);
            }
        }
    }

    if ev.best_fitness().is_none() {
        return Err(Error::Config("no evaluation was possible".into()));
    }
    Ok(RunRecord::new(ALGORITHM_ID, problem, config, ev.finish()))
}
