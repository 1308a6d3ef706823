use crate::error::{Error, Result};

pub const INPUTS: usize = 8;

/// Number of weights of a network with `hidden` hidden nodes.
pub fn weight_count(hidden: usize) -> usize {
    (INPUTS + 1) * hidden
}

pub fn sigmoid(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

/// Single-hidden-layer network: 8 inputs, `hidden` sigmoid nodes, one
/// identity output node, no biases.
#[derive(Debug, Clone, PartialEq)]
pub struct FFNetwork {
    hidden: usize,
    // w1[j * hidden + k] links input j to hidden node k
    w1: Vec<f64>,
    w2: Vec<f64>,
}

impl FFNetwork {
    pub fn new(hidden: usize, w1: Vec<f64>, w2: Vec<f64>) -> Result<Self> {
        if hidden == 0 {
            return Err(Error::Config("network needs at least one hidden node".into()));
        }
        if w1.len() != INPUTS * hidden {
            return Err(Error::Encoding {
                expected: INPUTS * hidden,
                actual: w1.len(),
            });
        }
        if w2.len() != hidden {
            return Err(Error::Encoding {
                expected: hidden,
                actual: w2.len(),
            });
        }
        Ok(Self { hidden, w1, w2 })
    }

    pub fn zeros(hidden: usize) -> Result<Self> {
        Self::new(hidden, vec![0.0; INPUTS * hidden], vec![0.0; hidden])
    }

    /// Inverse of [`FFNetwork::encode`]: the first `8 * hidden` entries are
    /// the hidden weights, input-index major; the last `hidden` are the
    /// output weights.
    pub fn decode(vector: &[f64], hidden: usize) -> Result<Self> {
        if hidden == 0 {
            return Err(Error::Config("network needs at least one hidden node".into()));
        }
        let expected = weight_count(hidden);
        if vector.len() != expected {
            return Err(Error::Encoding {
                expected,
                actual: vector.len(),
            });
        }
        let (w1, w2) = vector.split_at(INPUTS * hidden);
        Self::new(hidden, w1.to_vec(), w2.to_vec())
    }

    pub fn encode(&self) -> Vec<f64> {
        let mut v = self.w1.clone();
        v.extend_from_slice(&self.w2);
        v
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn weight_count(&self) -> usize {
        weight_count(self.hidden)
    }

    pub fn hidden_weight(&self, input: usize, node: usize) -> f64 {
        self.w1[input * self.hidden + node]
    }

    pub fn output_weights(&self) -> &[f64] {
        &self.w2
    }

    pub fn hidden_outputs(&self, input: &[f64; INPUTS]) -> Vec<f64> {
        (0..self.hidden).map(|k| self.activation(input, k)).collect()
    }

    fn activation(&self, input: &[f64; INPUTS], node: usize) -> f64 {
        let mut s = 0.0;
        for (j, xj) in input.iter().enumerate() {
            s += self.w1[j * self.hidden + node] * xj;
        }
        sigmoid(s)
    }

    pub fn forward(&self, input: &[f64; INPUTS]) -> f64 {
        (0..self.hidden)
            .map(|k| self.w2[k] * self.activation(input, k))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_counts() {
        assert_eq!(weight_count(3), 27);
        assert_eq!(weight_count(4), 36);
        assert_eq!(weight_count(5), 45);
    }

    #[test]
    fn zero_network_outputs_zero() {
        let net = FFNetwork::zeros(4).unwrap();
        assert_eq!(net.forward(&[0.3; 8]), 0.0);
        assert_eq!(net.hidden_outputs(&[0.3; 8]), vec![0.5; 4]);
    }

    #[test]
    fn single_node_examples() {
        let net = FFNetwork::new(1, vec![0.0; 8], vec![1.0]).unwrap();
        assert_eq!(net.forward(&[0.9, -0.2, 0.1, 0.0, 0.5, 1.0, -1.0, 0.3]), 0.5);

        let mut w1 = vec![0.0; 8];
        w1[0] = 1.0;
        let net = FFNetwork::new(1, w1, vec![2.0]).unwrap();
        let mut x = [0.0; 8];
        x[0] = 1.0;
        let expected = 2.0 / (1.0 + (-1.0f64).exp());
        assert!((net.forward(&x) - expected).abs() < 1e-15);
        assert!((net.forward(&x) - 1.4621).abs() < 1e-4);
    }

    #[test]
    fn decode_layout_and_lengths() {
        let v: Vec<f64> = (0..27).map(|k| k as f64 / 27.0).collect();
        let net = FFNetwork::decode(&v, 3).unwrap();
        assert_eq!(net.hidden_weight(0, 0), v[0]);
        assert_eq!(net.hidden_weight(0, 2), v[2]);
        assert_eq!(net.hidden_weight(1, 0), v[3]);
        assert_eq!(net.hidden_weight(7, 2), v[23]);
        assert_eq!(net.output_weights(), &v[24..]);
        assert_eq!(net.encode(), v);

        assert!(matches!(
            FFNetwork::decode(&v, 4),
            Err(Error::Encoding { expected: 36, actual: 27 })
        ));
        assert_eq!(FFNetwork::decode(&[0.0; 45], 5).unwrap(), FFNetwork::zeros(5).unwrap());
    }
}
