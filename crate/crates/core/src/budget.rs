//! Evaluation budget accounting, best-so-far tracking and trend logging.

use crate::error::BudgetExhausted;
use crate::problem::Problem;
use crate::record::{TrendLog, TrendSample};

/// Count of objective evaluations against the allowed maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetLedger {
    n_eval: u64,
    max_eval: u64,
}

impl BudgetLedger {
    pub fn new(max_eval: u64) -> Self {
        Self { n_eval: 0, max_eval }
    }

    pub fn n_eval(&self) -> u64 {
        self.n_eval
    }

    pub fn max_eval(&self) -> u64 {
        self.max_eval
    }

    pub fn remaining(&self) -> u64 {
        self.max_eval - self.n_eval
    }

    pub fn is_exhausted(&self) -> bool {
        self.n_eval >= self.max_eval
    }

    /// `n_eval / max_eval`, the CAP attraction multiplier.
    pub fn progress(&self) -> f64 {
        self.n_eval as f64 / self.max_eval as f64
    }
}

/// Evaluates `x` and charges one evaluation to `ledger`.
///
/// Non-finite objective values come back as `+inf` so they can never become
/// the best solution.
pub fn evaluate(
    problem: &Problem,
    x: &[f64],
    ledger: &mut BudgetLedger,
) -> Result<f64, BudgetExhausted> {
    if ledger.is_exhausted() {
        return Err(BudgetExhausted {
            max_eval: ledger.max_eval,
        });
    }
    debug_assert!(
        problem.bounds().contains(x),
        "evaluation outside bounds: {x:?}"
    );
    ledger.n_eval += 1;
    let f = problem.objective(x);
    Ok(if f.is_finite() { f } else { f64::INFINITY })
}

/// Hooks for instrumenting a run. Every method defaults to a no-op.
pub trait RunObserver {
    fn on_evaluation(&mut self, _x: &[f64], _fitness: f64, _n_eval: u64) {}
    /// The `n_eval / max_eval` factor used by one CAP particle update.
    fn on_attraction(&mut self, _factor: f64) {}
    fn on_cap_sweep(&mut self, _update: bool) {}
    fn on_ms_stage(&mut self) {}
    /// Donor indices used by one mutation of particle `target`.
    fn on_mutation(&mut self, _target: usize, _donors: &[usize]) {}
    fn on_lifetime(&mut self, _particle: usize, _life: u32) {}
}

/// Observer that ignores everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoObserver;

impl RunObserver for NoObserver {}

/// What an [`Evaluator`] learned over a run.
#[derive(Debug, Clone)]
pub struct EvaluationSummary {
    pub best_x: Vec<f64>,
    pub best_fitness: f64,
    pub n_eval: u64,
    pub max_eval: u64,
    pub non_finite_evals: u64,
    pub trend: Vec<TrendSample>,
}

/// The single gateway through which an algorithm evaluates candidates.
///
/// Owns the ledger, keeps the best point ever evaluated, logs the trend and
/// forwards events to an optional observer.
pub struct Evaluator<'a> {
    problem: &'a Problem,
    ledger: BudgetLedger,
    trend: TrendLog,
    best: Option<(Vec<f64>, f64)>,
    non_finite: u64,
    observer: Option<&'a mut dyn RunObserver>,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a Problem, max_eval: u64) -> Self {
        Self {
            problem,
            ledger: BudgetLedger::new(max_eval),
            trend: TrendLog::new(max_eval),
            best: None,
            non_finite: 0,
            observer: None,
        }
    }

    pub fn with_observer(mut self, observer: &'a mut dyn RunObserver) -> Self {
        self.observer = Some(observer);
        self
    }

    pub fn problem(&self) -> &'a Problem {
        self.problem
    }

    pub fn ledger(&self) -> &BudgetLedger {
        &self.ledger
    }

    pub fn is_exhausted(&self) -> bool {
        self.ledger.is_exhausted()
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64, BudgetExhausted> {
        let f = evaluate(self.problem, x, &mut self.ledger)?;
        if f == f64::INFINITY {
            self.non_finite += 1;
        }
        let improved = match &self.best {
            None => true,
            Some((_, best)) => f < *best,
        };
        if improved {
            self.best = Some((x.to_vec(), f));
        }
        let best_f = self.best.as_ref().map_or(f, |(_, b)| *b);
        self.trend.observe(self.ledger.n_eval(), best_f, improved);
        if let Some(obs) = self.observer.as_deref_mut() {
            obs.on_evaluation(x, f, self.ledger.n_eval());
        }
        Ok(f)
    }

    /// Forwards an event to the observer, if any.
    pub fn notify(&mut self, event: impl FnOnce(&mut dyn RunObserver)) {
        if let Some(obs) = self.observer.as_deref_mut() {
            event(obs);
        }
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best.as_ref().map(|(_, f)| *f)
    }

    /// Closes the trend log. Panics if nothing was ever evaluated.
    pub fn finish(self) -> EvaluationSummary {
        let (best_x, best_fitness) = self.best.expect("at least one evaluation");
        let trend = self.trend.finish(self.ledger.n_eval(), best_fitness);
        EvaluationSummary {
            best_x,
            best_fitness,
            n_eval: self.ledger.n_eval(),
            max_eval: self.ledger.max_eval(),
            non_finite_evals: self.non_finite,
            trend,
        }
    }
}
