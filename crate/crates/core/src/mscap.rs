//! Multi-Strategy Coevolving Aging Particles.
//!
//! A run starts from a single random point copied into every particle and
//! then alternates two stages until the budget is spent:
//!
//! * the CAP sweep, where each particle is pulled toward the swarm best with
//!   a force that grows with `n_eval / max_eval`, and ages when it fails to
//!   improve (shrinking and flipping its velocity, and eventually restarting
//!   from a random donor);
//! * the multi-strategy (MS) stage, entered only when a sweep did not improve
//!   the swarm best: `L` generations of DE-style mutation and crossover with
//!   strategies drawn per particle from a pool of four mutations and two
//!   crossovers.

use crate::budget::{Evaluator, NoObserver, RunObserver};
use crate::config::RunConfig;
use crate::error::{BudgetExhausted, Error, Result};
use crate::problem::{Bounds, Problem};
use crate::record::RunRecord;
use crate::rng::{RandomSource, RunRng};
use crate::swarm::{init_velocity, Swarm};

pub const ALGORITHM_ID: &str = "mscap";

/// Smallest swarm that leaves five donors distinct from the target.
pub const MIN_POP_SIZE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationStrategy {
    /// `x_r + F(x_s - x_t)`
    Rand1,
    /// `x_r + F(x_s - x_t) + F(x_u - x_v)`
    Rand2,
    /// `x_r + K(x_best - x_i) + F(x_r - x_s) + F(x_u - x_v)`
    RandToBest2,
    /// `x_i + F(x_best - x_i) + F(x_s - x_t)`
    CurToBest1,
}

impl MutationStrategy {
    pub const ALL: [Self; 4] = [
        Self::Rand1,
        Self::Rand2,
        Self::RandToBest2,
        Self::CurToBest1,
    ];

    /// Which of the five donor slots `[r, s, t, u, v]` the formula reads.
    pub fn donor_slots(self) -> &'static [usize] {
        match self {
            Self::Rand1 => &[0, 1, 2],
            Self::Rand2 => &[0, 1, 2, 3, 4],
            Self::RandToBest2 => &[0, 1, 3, 4],
            Self::CurToBest1 => &[1, 2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossoverStrategy {
    Binomial,
    Exponential,
}

impl CrossoverStrategy {
    pub const ALL: [Self; 2] = [Self::Binomial, Self::Exponential];
}

/// Position and fitness of a particle before a CAP perturbation.
#[derive(Debug, Clone, PartialEq)]
pub struct SavedParticle {
    pub x: Vec<f64>,
    pub f: f64,
}

/// Result of perturbing one particle in a CAP sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CapMove {
    pub saved: SavedParticle,
    /// New fitness strictly below the particle's own previous fitness.
    pub improved_parent: bool,
    /// New fitness strictly below the swarm best; `best` now points here.
    pub improved_best: bool,
}

fn budget_error(ev: &Evaluator<'_>) -> Error {
    Error::Budget(BudgetExhausted {
        max_eval: ev.ledger().max_eval(),
    })
}

/// Perturbs particle `i` toward the swarm best, wraps and evaluates it.
///
/// Per coordinate, with a fresh `U(0,1)` draw each:
/// `v += U * (n_eval / max_eval) * (x_best - x)`, then `x += v`.
/// The best index moves to `i` immediately on a strict improvement.
pub fn cap_update_particle<R: RandomSource + ?Sized>(
    i: usize,
    swarm: &mut Swarm,
    ev: &mut Evaluator<'_>,
    rng: &mut R,
) -> Result<CapMove> {
    if ev.is_exhausted() {
        return Err(budget_error(ev));
    }
    let factor = ev.ledger().progress();
    ev.notify(|o| o.on_attraction(factor));

    let bounds = ev.problem().bounds();
    let best_x = swarm.best().x.clone();
    let f_best = swarm.best_fitness();

    let p = swarm.particle_mut(i);
    let saved = SavedParticle {
        x: p.x.clone(),
        f: p.f,
    };
    for ((x, v), xb) in p.x.iter_mut().zip(p.v.iter_mut()).zip(&best_x) {
        *v += rng.next_f64() * factor * (xb - *x);
        *x += *v;
    }
    bounds.wrap_in_place(&mut p.x)?;
    let f = ev.evaluate(&p.x)?;
    p.f = f;

    let improved_best = f < f_best;
    if improved_best {
        swarm.set_best(i);
    }
    Ok(CapMove {
        improved_parent: f < saved.f,
        saved,
        improved_best,
    })
}

/// Lifetime bookkeeping after a CAP perturbation of particle `i`.
///
/// Returns the lifetime the particle reached before any restart, so a
/// restart shows up as `ceil(-ln epsilon)`.
pub fn cap_age<R: RandomSource + ?Sized>(
    i: usize,
    improved: bool,
    saved: SavedParticle,
    swarm: &mut Swarm,
    epsilon: f64,
    bounds: &Bounds,
    rng: &mut R,
) -> u32 {
    if improved {
        swarm.particle_mut(i).life = 0;
        return 0;
    }

    let life = swarm.particle(i).life + 1;
    let decay = (-f64::from(life)).exp();
    if decay < epsilon {
        // restart from a random donor r != i
        let n = swarm.len();
        let mut r = rng.below(n - 1);
        if r >= i {
            r += 1;
        }
        let (x_r, f_r) = {
            let donor = swarm.particle(r);
            (donor.x.clone(), donor.f)
        };
        let v = init_velocity(bounds, rng);
        let p = swarm.particle_mut(i);
        p.x = x_r;
        p.f = f_r;
        p.v = v;
        p.life = 0;
        if swarm.best_index() == i {
            swarm.refresh_best();
        }
    } else {
        let p = swarm.particle_mut(i);
        p.x = saved.x;
        p.f = saved.f;
        p.life = life;
        if life.is_multiple_of(2) {
            p.v.iter_mut().for_each(|v| *v *= -decay);
        } else {
            p.v.iter_mut().for_each(|v| *v = -*v);
        }
    }
    life
}

/// One CAP pass over the particles in index order. Returns whether any
/// perturbation strictly improved the swarm best. Stops early, keeping the
/// flag, when the budget runs out.
pub fn cap_sweep<R: RandomSource + ?Sized>(
    swarm: &mut Swarm,
    ev: &mut Evaluator<'_>,
    epsilon: f64,
    rng: &mut R,
) -> Result<bool> {
    let mut update = false;
    for i in 0..swarm.len() {
        let step = match cap_update_particle(i, swarm, ev, rng) {
            Ok(step) => step,
            Err(Error::Budget(_)) => break,
            Err(e) => return Err(e),
        };
        update |= step.improved_best;
        let bounds = ev.problem().bounds();
        let life = cap_age(i, step.improved_parent, step.saved, swarm, epsilon, bounds, rng);
        ev.notify(|o| o.on_lifetime(i, life));
    }
    ev.notify(|o| o.on_cap_sweep(update));
    Ok(update)
}

/// Mutant vector plus the donor indices `[r, s, t, u, v]` drawn for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Mutant {
    pub x: Vec<f64>,
    pub donors: [usize; 5],
}

impl Mutant {
    /// The donors the strategy actually reads.
    pub fn used_donors(&self, strategy: MutationStrategy) -> Vec<usize> {
        strategy
            .donor_slots()
            .iter()
            .map(|&slot| self.donors[slot])
            .collect()
    }
}

/// Five mutually distinct indices in `0..n`, all different from `target`.
pub fn draw_donors<R: RandomSource + ?Sized>(target: usize, n: usize, rng: &mut R) -> [usize; 5] {
    assert!(n >= MIN_POP_SIZE, "need at least {MIN_POP_SIZE} particles");
    let mut pool: Vec<usize> = (0..n).filter(|&k| k != target).collect();
    let mut out = [0; 5];
    for (k, slot) in out.iter_mut().enumerate() {
        let pick = k + rng.below(pool.len() - k);
        pool.swap(k, pick);
        *slot = pool[k];
    }
    out
}

/// Builds a mutant for particle `i` from `population`, wrapped into bounds.
#[allow(clippy::too_many_arguments)]
pub fn de_mutate<R: RandomSource + ?Sized>(
    strategy: MutationStrategy,
    i: usize,
    population: &Swarm,
    scale: f64,
    k: f64,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Mutant> {
    let donors = draw_donors(i, population.len(), rng);
    let [r, s, t, u, v] = donors.map(|d| population.particle(d).x.as_slice());
    let xi = population.particle(i).x.as_slice();
    let xb = population.best().x.as_slice();

    let mut x: Vec<f64> = (0..bounds.dim())
        .map(|j| match strategy {
            MutationStrategy::Rand1 => r[j] + scale * (s[j] - t[j]),
            MutationStrategy::Rand2 => r[j] + scale * (s[j] - t[j]) + scale * (u[j] - v[j]),
            MutationStrategy::RandToBest2 => {
                r[j] + k * (xb[j] - xi[j]) + scale * (r[j] - s[j]) + scale * (u[j] - v[j])
            }
            MutationStrategy::CurToBest1 => {
                xi[j] + scale * (xb[j] - xi[j]) + scale * (s[j] - t[j])
            }
        })
        .collect();
    bounds.wrap_in_place(&mut x)?;
    Ok(Mutant { x, donors })
}

/// Recombines `parent` and `mutant` with crossover rate `cr`.
///
/// Binomial copies each gene from the mutant when its own `U(0,1) < cr`,
/// plus one forced gene. Exponential copies a run of consecutive genes
/// (modulo `D`) from a random start, at least one, continuing while the
/// successive draws stay below `cr`.
pub fn de_crossover<R: RandomSource + ?Sized>(
    strategy: CrossoverStrategy,
    parent: &[f64],
    mutant: &[f64],
    cr: f64,
    rng: &mut R,
) -> Vec<f64> {
    let d = parent.len();
    debug_assert_eq!(d, mutant.len());
    let mut trial = parent.to_vec();
    match strategy {
        CrossoverStrategy::Binomial => {
            let forced = rng.below(d);
            for j in 0..d {
                if rng.next_f64() < cr || j == forced {
                    trial[j] = mutant[j];
                }
            }
        }
        CrossoverStrategy::Exponential => {
            let start = rng.below(d);
            let mut copied = 0;
            loop {
                let j = (start + copied) % d;
                trial[j] = mutant[j];
                copied += 1;
                if copied == d || rng.next_f64() >= cr {
                    break;
                }
            }
        }
    }
    trial
}

/// Multi-strategy stage: `generations` rounds of DE mutation, crossover and
/// one-to-one replacement. Donors and survival thresholds come from the
/// swarm as it stood at the start of each generation. Particles that were
/// replaced at least once get a fresh velocity and `life = 0` at the end,
/// including when the budget runs out part way. Returns the changed mask.
pub fn ms_stage<R: RandomSource + ?Sized>(
    swarm: &mut Swarm,
    ev: &mut Evaluator<'_>,
    generations: usize,
    rng: &mut R,
) -> Result<Vec<bool>> {
    ev.notify(|o| o.on_ms_stage());
    let n = swarm.len();
    let bounds = ev.problem().bounds();
    let mut changed = vec![false; n];

    let outcome = ms_generations(swarm, ev, generations, &mut changed, rng);

    for (i, _) in changed.iter().enumerate().filter(|(_, &c)| c) {
        let v = init_velocity(bounds, rng);
        let p = swarm.particle_mut(i);
        p.v = v;
        p.life = 0;
    }
    swarm.refresh_best();

    match outcome {
        Ok(()) | Err(Error::Budget(_)) => Ok(changed),
        Err(e) => Err(e),
    }
}

fn ms_generations<R: RandomSource + ?Sized>(
    swarm: &mut Swarm,
    ev: &mut Evaluator<'_>,
    generations: usize,
    changed: &mut [bool],
    rng: &mut R,
) -> Result<()> {
    let bounds = ev.problem().bounds();
    for _generation in 0..generations {
        let snapshot = swarm.clone();
        for (i, changed_i) in changed.iter_mut().enumerate() {
            if ev.is_exhausted() {
                return Err(budget_error(ev));
            }
            let scale = rng.uniform(0.1, 1.0);
            let cr = rng.next_f64();
            let mutation = MutationStrategy::ALL[rng.below(4)];
            let crossover = CrossoverStrategy::ALL[rng.below(2)];
            let k = rng.next_f64();

            let mutant = de_mutate(mutation, i, &snapshot, scale, k, bounds, rng)?;
            let used = mutant.used_donors(mutation);
            ev.notify(|o| o.on_mutation(i, &used));

            let parent = snapshot.particle(i);
            let mut trial = de_crossover(crossover, &parent.x, &mutant.x, cr, rng);
            bounds.wrap_in_place(&mut trial)?;
            let f = ev.evaluate(&trial)?;
            if f < parent.f {
                let p = swarm.particle_mut(i);
                p.x = trial;
                p.f = f;
                *changed_i = true;
            }
        }
        swarm.refresh_best();
    }
    Ok(())
}

/// Runs MS-CAP on `problem` with the given configuration.
pub fn run(problem: &Problem, config: &RunConfig) -> Result<RunRecord> {
    run_observed(problem, config, &mut NoObserver)
}

/// [`run`] with instrumentation hooks.
pub fn run_observed(
    problem: &Problem,
    config: &RunConfig,
    observer: &mut dyn RunObserver,
) -> Result<RunRecord> {
    config.validate(MIN_POP_SIZE)?;
    let mut rng = RunRng::seed_from(config.seed);
    let mut ev = Evaluator::new(problem, config.max_eval).with_observer(observer);
    let bounds = problem.bounds();

    let x_init = bounds.sample(&mut rng);
    let f_init = ev.evaluate(&x_init)?;
    let mut swarm = Swarm::from_single_point(config.pop_size, x_init, f_init, bounds, &mut rng);

    while !ev.is_exhausted() {
        let update = cap_sweep(&mut swarm, &mut ev, config.epsilon, &mut rng)?;
        if ev.is_exhausted() {
            break;
        }
        if !update {
            ms_stage(&mut swarm, &mut ev, config.gens_ms, &mut rng)?;
        }
    }

    Ok(RunRecord::new(ALGORITHM_ID, problem, config, ev.finish()))
}
