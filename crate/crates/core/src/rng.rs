//! Random stream used by every stochastic decision of a run.
//!
//! One [`RunRng`] drives a whole run, so a `(config, seed)` pair reproduces
//! the run bit for bit. Algorithms are generic over [`RandomSource`] so tests
//! can substitute a scripted stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait RandomSource {
    /// Uniform sample in `[0, 1)`.
    fn next_f64(&mut self) -> f64;

    /// Uniform index in `0..n`. `n` must be positive.
    fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }

    /// Uniform sample in `[lo, hi)`.
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn next_f64(&mut self) -> f64 {
        (**self).next_f64()
    }

    fn below(&mut self, n: usize) -> usize {
        (**self).below(n)
    }
}

/// Seeded ChaCha8 stream. ChaCha output is stable across platforms and
/// `rand` releases, unlike `StdRng`.
#[derive(Debug, Clone)]
pub struct RunRng(ChaCha8Rng);

impl RunRng {
    pub fn seed_from(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Access to the underlying generator for `rand_distr` sampling.
    pub fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.0
    }
}

impl RandomSource for RunRng {
    fn next_f64(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    fn below(&mut self, n: usize) -> usize {
        self.0.random_range(0..n)
    }
}
