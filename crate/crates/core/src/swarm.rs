//! Particle and swarm state shared by both MS-CAP stages.

use crate::problem::Bounds;
use crate::rng::RandomSource;

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub f: f64,
    /// Consecutive non-improving perturbations.
    pub life: u32,
}

/// Fresh velocity: component `j` uniform in `[-(ub-lb)/2, (ub-lb)/2)`.
pub fn init_velocity<R: RandomSource + ?Sized>(bounds: &Bounds, rng: &mut R) -> Vec<f64> {
    (0..bounds.dim())
        .map(|j| (rng.next_f64() - 0.5) * bounds.width(j))
        .collect()
}

/// The particles of a run plus the index of the current best.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    particles: Vec<Particle>,
    best: usize,
}

impl Swarm {
    /// Builds a swarm and points `best` at the first minimal particle.
    pub fn new(particles: Vec<Particle>) -> Self {
        assert!(!particles.is_empty(), "swarm needs at least one particle");
        let mut swarm = Self { particles, best: 0 };
        swarm.refresh_best();
        swarm
    }

    /// `n` copies of one evaluated point, each with its own velocity.
    pub fn from_single_point<R: RandomSource + ?Sized>(
        n: usize,
        x: Vec<f64>,
        f: f64,
        bounds: &Bounds,
        rng: &mut R,
    ) -> Self {
        let particles = (0..n)
            .map(|_| Particle {
                x: x.clone(),
                v: init_velocity(bounds, rng),
                f,
                life: 0,
            })
            .collect();
        Self { particles, best: 0 }
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn particle(&self, i: usize) -> &Particle {
        &self.particles[i]
    }

    pub(crate) fn particle_mut(&mut self, i: usize) -> &mut Particle {
        &mut self.particles[i]
    }

    pub fn best_index(&self) -> usize {
        self.best
    }

    pub fn best(&self) -> &Particle {
        &self.particles[self.best]
    }

    pub fn best_fitness(&self) -> f64 {
        self.particles[self.best].f
    }

    pub(crate) fn set_best(&mut self, i: usize) {
        self.best = i;
    }

    /// Re-points `best` at a minimum. The current best keeps its title on
    /// ties; otherwise the lowest index wins.
    pub fn refresh_best(&mut self) {
        let mut best = self.best;
        for (i, p) in self.particles.iter().enumerate() {
            if p.f < self.particles[best].f {
                best = i;
            }
        }
        self.best = best;
    }

    /// Whether `best` witnesses the minimum fitness.
    pub fn best_is_witness(&self) -> bool {
        let fb = self.best_fitness();
        self.particles.iter().all(|p| fb <= p.f)
    }
}
