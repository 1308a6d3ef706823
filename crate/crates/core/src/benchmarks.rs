//! Seeded benchmark landscapes: separable, non-separable, ill-conditioned
//! and multimodal functions, each optionally shifted and rotated.
//!
//! A benchmark evaluates `f(R (x - o) + z*) + bias`, where `z*` is the
//! optimum of the base function and `o` is the optimum in search space (the
//! shift when shifted, `z*` otherwise). Without shift or rotation this is
//! just `f(x)`.

use std::f64::consts::{E, PI};
use std::sync::Arc;

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::problem::{Bounds, Problem};
use crate::rng::{RandomSource, RunRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseFunction {
    Sphere,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel12,
    Ellipsoid,
}

impl BaseFunction {
    pub const ALL: [Self; 7] = [
        Self::Sphere,
        Self::Rosenbrock,
        Self::Rastrigin,
        Self::Ackley,
        Self::Griewank,
        Self::Schwefel12,
        Self::Ellipsoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Sphere => "sphere",
            Self::Rosenbrock => "rosenbrock",
            Self::Rastrigin => "rastrigin",
            Self::Ackley => "ackley",
            Self::Griewank => "griewank",
            Self::Schwefel12 => "schwefel-1.2",
            Self::Ellipsoid => "ellipsoid",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Conventional search interval, identical on every coordinate.
    pub fn default_bounds(self) -> (f64, f64) {
        match self {
            Self::Sphere | Self::Ellipsoid | Self::Schwefel12 => (-100.0, 100.0),
            Self::Rosenbrock => (-30.0, 30.0),
            Self::Rastrigin => (-5.12, 5.12),
            Self::Ackley => (-32.0, 32.0),
            Self::Griewank => (-600.0, 600.0),
        }
    }

    /// Minimizer of the unshifted function; the minimum value is 0.
    pub fn optimum_point(self, dim: usize) -> Vec<f64> {
        match self {
            Self::Rosenbrock => vec![1.0; dim],
            _ => vec![0.0; dim],
        }
    }

    pub fn evaluate(self, z: &[f64]) -> f64 {
        let d = z.len() as f64;
        match self {
            Self::Sphere => z.iter().map(|v| v * v).sum(),
            Self::Rosenbrock => z
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
                .sum(),
            Self::Rastrigin => z
                .iter()
                .map(|v| v * v + 10.0 * (1.0 - (2.0 * PI * v).cos()))
                .sum(),
            Self::Ackley => {
                let sq = z.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            Self::Griewank => {
                let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                sum - prod + 1.0
            }
            Self::Schwefel12 => {
                let mut partial = 0.0;
                z.iter()
                    .map(|v| {
                        partial += v;
                        partial * partial
                    })
                    .sum()
            }
            Self::Ellipsoid => {
                if z.len() == 1 {
                    return z[0] * z[0];
                }
                z.iter()
                    .enumerate()
                    .map(|(i, v)| 10f64.powf(6.0 * i as f64 / (d - 1.0)) * v * v)
                    .sum()
            }
        }
    }
}

/// What to build: base function, size and which transforms to apply.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec {
    pub function: BaseFunction,
    pub dimension: usize,
    pub shifted: bool,
    pub rotated: bool,
    /// Fitness at the optimum.
    pub bias: f64,
}

impl BenchmarkSpec {
    pub fn new(function: BaseFunction, dimension: usize) -> Self {
        Self {
            function,
            dimension,
            shifted: false,
            rotated: false,
            bias: 0.0,
        }
    }

    pub fn shifted(mut self) -> Self {
        self.shifted = true;
        self
    }

    pub fn rotated(mut self) -> Self {
        self.rotated = true;
        self
    }

    /// Parses a registry name such as `shifted-rotated-rastrigin`.
    pub fn from_name(name: &str, dimension: usize) -> Result<Self> {
        let mut rest = name;
        let mut shifted = false;
        let mut rotated = false;
        if let Some(r) = rest.strip_prefix("shifted-") {
            shifted = true;
            rest = r;
        }
        if let Some(r) = rest.strip_prefix("rotated-") {
            rotated = true;
            rest = r;
        }
        let function =
            BaseFunction::from_name(rest).ok_or_else(|| Error::UnknownBenchmark(name.into()))?;
        Ok(Self {
            function,
            dimension,
            shifted,
            rotated,
            bias: 0.0,
        })
    }

    pub fn name(&self) -> String {
        let mut s = String::new();
        if self.shifted {
            s.push_str("shifted-");
        }
        if self.rotated {
            s.push_str("rotated-");
        }
        s.push_str(self.function.name());
        s
    }
}

/// A concrete benchmark instance with its drawn shift and rotation.
#[derive(Debug, Clone)]
pub struct Benchmark {
    spec: BenchmarkSpec,
    bounds: Bounds,
    shift: Option<Vec<f64>>,
    /// Row-major `D x D` orthogonal matrix.
    rotation: Option<Vec<f64>>,
    optimum: Vec<f64>,
    base_optimum: Vec<f64>,
}

impl Benchmark {
    pub fn spec(&self) -> &BenchmarkSpec {
        &self.spec
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn shift(&self) -> Option<&[f64]> {
        self.shift.as_deref()
    }

    pub fn rotation(&self) -> Option<&[f64]> {
        self.rotation.as_deref()
    }

    /// Global minimizer in search space.
    pub fn optimum_point(&self) -> &[f64] {
        &self.optimum
    }

    pub fn optimum_fitness(&self) -> f64 {
        self.spec.bias
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        let d = x.len();
        let diff: Vec<f64> = x.iter().zip(&self.optimum).map(|(a, o)| a - o).collect();
        let z: Vec<f64> = match &self.rotation {
            Some(rot) => (0..d)
                .map(|i| {
                    let row = &rot[i * d..(i + 1) * d];
                    row.iter().zip(&diff).map(|(r, v)| r * v).sum::<f64>() + self.base_optimum[i]
                })
                .collect(),
            None => diff.iter().zip(&self.base_optimum).map(|(v, b)| v + b).collect(),
        };
        self.spec.function.evaluate(&z) + self.spec.bias
    }

    pub fn into_problem(self) -> Problem {
        let name = self.spec.name();
        let bounds = self.bounds.clone();
        let optimum = self.optimum_fitness();
        let bench = Arc::new(self);
        Problem::new(name, bounds, move |x| bench.evaluate(x)).with_known_optimum(optimum)
    }
}

/// Instantiates `spec`, drawing shift and rotation from `seed`.
pub fn make_benchmark(spec: &BenchmarkSpec, seed: u64) -> Result<Benchmark> {
    if spec.dimension < 2 {
        return Err(Error::Config(format!(
            "benchmark dimension must be at least 2, got {}",
            spec.dimension
        )));
    }
    let d = spec.dimension;
    let (lo, hi) = spec.function.default_bounds();
    let bounds = Bounds::uniform(d, lo, hi)?;
    let mut rng = RunRng::seed_from(seed);

    let base_optimum = spec.function.optimum_point(d);
    let shift = spec.shifted.then(|| {
        (0..d)
            .map(|j| {
                let w = bounds.width(j);
                bounds.lower()[j] + w * (0.1 + 0.8 * rng.next_f64())
            })
            .collect::<Vec<f64>>()
    });
    let rotation = spec.rotated.then(|| random_rotation(d, &mut rng));
    let optimum = shift.clone().unwrap_or_else(|| base_optimum.clone());

    Ok(Benchmark {
        spec: spec.clone(),
        bounds,
        shift,
        rotation,
        optimum,
        base_optimum,
    })
}

/// Looks up `name` in the registry and builds the problem.
pub fn make_problem(name: &str, dimension: usize, seed: u64) -> Result<Problem> {
    let spec = BenchmarkSpec::from_name(name, dimension)?;
    Ok(make_benchmark(&spec, seed)?.into_problem())
}

/// Sorted registry names.
pub fn list_benchmarks() -> Vec<String> {
    let mut names: Vec<String> = BaseFunction::ALL
        .iter()
        .flat_map(|f| {
            ["", "shifted-", "rotated-", "shifted-rotated-"]
                .iter()
                .map(move |prefix| format!("{prefix}{}", f.name()))
        })
        .collect();
    names.sort();
    names
}

/// Orthogonal matrix from Gram-Schmidt on a Gaussian matrix (row-major).
///
/// Each column is orthogonalized twice against its predecessors; the
/// implied triangular factor has a positive diagonal, which makes the
/// result a deterministic function of the seed.
pub fn random_rotation(dim: usize, rng: &mut RunRng) -> Vec<f64> {
    let mut cols: Vec<Vec<f64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| StandardNormal.sample(rng.inner()))
                .collect()
        })
        .collect();
    for k in 0..dim {
        for _pass in 0..2 {
            for prev in 0..k {
                let dot: f64 = cols[k].iter().zip(&cols[prev]).map(|(a, b)| a * b).sum();
                let (head, tail) = cols.split_at_mut(k);
                for (a, b) in tail[0].iter_mut().zip(&head[prev]) {
                    *a -= dot * b;
                }
            }
        }
        let norm = cols[k].iter().map(|v| v * v).sum::<f64>().sqrt();
        cols[k].iter_mut().for_each(|v| *v /= norm);
    }
    let mut m = vec![0.0; dim * dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m[r * dim + c] = *v;
        }
    }
    m
}
