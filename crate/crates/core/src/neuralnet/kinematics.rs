//! Synthetic 8-link arm kinematics data.
//!
//! Joint `k` rotates about the local z axis for even `k` and the local y
//! axis for odd `k`, then translates along the local x axis by its link
//! length. The target is the distance from the end effector to
//! [`TARGET`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::neuralnet::dataset::{KinDataset, KinRow};
use crate::neuralnet::network::INPUTS;
use crate::rng::{RandomSource, RunRng};

pub const LINK_LENGTHS: [f64; INPUTS] = [0.35, 0.25, 0.15, 0.10, 0.06, 0.04, 0.03, 0.02];
pub const TARGET: [f64; 3] = [0.1, 0.1, 0.1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseLevel {
    None,
    Medium,
    High,
}

impl NoiseLevel {
    /// Noise half-width as a fraction of the clean-output standard deviation.
    pub fn half_width_fraction(self) -> f64 {
        match self {
            Self::None => 0.0,
            Self::Medium => 0.025,
            Self::High => 0.05,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Medium => "medium",
            Self::High => "high",
        }
    }
}

impl fmt::Display for NoiseLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "medium" => Ok(Self::Medium),
            "high" => Ok(Self::High),
            _ => Err(Error::Config(format!(
                "unknown noise level `{s}` (expected none, medium or high)"
            ))),
        }
    }
}

type Mat3 = [[f64; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn joint_rotation(k: usize, angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    if k.is_multiple_of(2) {
        [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
    } else {
        [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
    }
}

pub fn end_effector(theta: &[f64; INPUTS]) -> [f64; 3] {
    let mut frame: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut p = [0.0; 3];
    for (k, (&angle, &len)) in theta.iter().zip(&LINK_LENGTHS).enumerate() {
        frame = mat_mul(&frame, &joint_rotation(k, angle));
        for (pi, row) in p.iter_mut().zip(&frame) {
            *pi += row[0] * len;
        }
    }
    p
}

pub fn clean_distance(theta: &[f64; INPUTS]) -> f64 {
    let p = end_effector(theta);
    p.iter()
        .zip(&TARGET)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// `n` rows with angles uniform in [-pi, pi]. Noise is uniform with the
/// half-width given by `noise` relative to the population standard
/// deviation of the clean distances.
pub fn synth_kinematics(n: usize, noise: NoiseLevel, seed: u64) -> Result<KinDataset> {
    if n == 0 {
        return Err(Error::Config("need at least one row".into()));
    }
    let mut rng = RunRng::seed_from(seed);
    let thetas: Vec<[f64; INPUTS]> = (0..n)
        .map(|_| std::array::from_fn(|_| rng.uniform(-PI, PI)))
        .collect();
    let clean: Vec<f64> = thetas.iter().map(clean_distance).collect();

    let mean = clean.iter().sum::<f64>() / n as f64;
    let std = (clean.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
    let half = noise.half_width_fraction() * std;

    let rows = thetas
        .into_iter()
        .zip(clean)
        .map(|(theta, y)| {
            let y = if half > 0.0 { y + rng.uniform(-half, half) } else { y };
            KinRow { theta, y }
        })
        .collect();
    KinDataset::from_rows(rows)
}
