//! Feedforward network regression of arm kinematics, exposed as an
//! optimization problem over the network weights.

mod dataset;
mod kinematics;
mod network;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::{Bounds, Problem};

pub use dataset::{
    load_dataset, read_dataset, split_three_ways, ColumnRange, DataSplit, KinDataset, KinRow,
    COLUMNS,
};
pub use kinematics::{
    clean_distance, end_effector, synth_kinematics, NoiseLevel, LINK_LENGTHS, TARGET,
};
pub use network::{sigmoid, weight_count, FFNetwork, INPUTS};

/// Mean squared error of `net` over the normalized rows in `indices`.
pub fn mse(net: &FFNetwork, dataset: &KinDataset, indices: &[usize]) -> f64 {
    let inputs = dataset.inputs();
    let targets = dataset.targets();
    let total: f64 = indices
        .iter()
        .map(|&i| (net.forward(&inputs[i]) - targets[i]).powi(2))
        .sum();
    total / indices.len() as f64
}

/// Gradient of [`mse`] with respect to the encoded weight vector.
pub fn mse_gradient(net: &FFNetwork, dataset: &KinDataset, indices: &[usize]) -> Vec<f64> {
    let h = net.hidden();
    let w2 = net.output_weights();
    let mut grad = vec![0.0; net.weight_count()];
    let scale = 2.0 / indices.len() as f64;
    for &i in indices {
        let x = &dataset.inputs()[i];
        let hidden = net.hidden_outputs(x);
        let out: f64 = hidden.iter().zip(w2).map(|(a, w)| a * w).sum();
        let err = scale * (out - dataset.targets()[i]);
        for k in 0..h {
            grad[INPUTS * h + k] += err * hidden[k];
            let back = err * w2[k] * hidden[k] * (1.0 - hidden[k]);
            for (j, xj) in x.iter().enumerate() {
                grad[j * h + k] += back * xj;
            }
        }
    }
    grad
}

/// Training objective over `[-1, 1]^(9 * hidden)`: the MSE of the decoded
/// network on the rows in `indices`.
pub fn mse_objective(dataset: Arc<KinDataset>, indices: &[usize], hidden: usize) -> Result<Problem> {
    if indices.is_empty() {
        return Err(Error::Config("training split is empty".into()));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= dataset.len()) {
        return Err(Error::Config(format!(
            "row index {bad} out of range for {} rows",
            dataset.len()
        )));
    }
    // validates `hidden`
    FFNetwork::zeros(hidden)?;
    let dim = weight_count(hidden);
    let indices = indices.to_vec();
    let bounds = Bounds::uniform(dim, -1.0, 1.0)?;
    Ok(Problem::new(format!("nn-h{hidden}"), bounds, move |w: &[f64]| {
        match FFNetwork::decode(w, hidden) {
            Ok(net) => mse(&net, &dataset, &indices),
            Err(_) => f64::NAN,
        }
    }))
}
