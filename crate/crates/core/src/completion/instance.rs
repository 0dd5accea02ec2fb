use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::{validate, BipartiteGraph, GraphFile};
use crate::numkernel::{DenseMatrix, RngStream};

/// A target matrix `Y` observed on the edges of a biregular mask, possibly
/// with noisy observations `Z` of mean-square error at most `delta^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletionInstance {
    pub y: DenseMatrix,
    pub mask: BipartiteGraph,
    /// Observed values in mask edge order; `None` means `Z = Y` on the mask.
    pub observations: Option<Vec<f64>>,
    pub delta: f64,
}

impl CompletionInstance {
    pub fn new(y: DenseMatrix, mask: BipartiteGraph) -> Result<Self> {
        if (y.rows(), y.cols()) != (mask.n(), mask.m()) {
            return Err(Error::DimensionMismatch(format!(
                "Y is {}x{} but the mask is {}x{}",
                y.rows(),
                y.cols(),
                mask.n(),
                mask.m()
            )));
        }
        mask.require_simple()?;
        let diag = validate(&mask);
        if !diag.passed {
            return Err(Error::InvalidParameters(format!(
                "mask degrees are not uniform: {} violations",
                diag.degree_violations.len()
            )));
        }
        if mask.num_edges() == 0 {
            return Err(Error::InvalidParameters("mask is empty".into()));
        }
        Ok(Self { y, mask, observations: None, delta: 0.0 })
    }

    /// Attach noisy observations. Their mean-square deviation from `Y` must
    /// not exceed `delta^2`.
    pub fn with_noise(mut self, z: Vec<f64>, delta: f64) -> Result<Self> {
        if z.len() != self.mask.num_edges() {
            return Err(Error::DimensionMismatch(format!("{} observations for {} mask entries", z.len(), self.mask.num_edges())));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::InvalidParameters(format!("delta must be finite and nonnegative, got {delta}")));
        }
        self.observations = Some(z);
        self.delta = delta;
        Ok(self)
    }

    /// Add uniform noise in `[-delta, delta]` on the mask (so the budget holds).
    pub fn with_uniform_noise(self, delta: f64, rng: &mut RngStream) -> Result<Self> {
        let z = self.mask.edges().iter().map(|&(i, j)| self.y[(i, j)] + delta * (2.0 * rng.uniform() - 1.0)).collect();
        self.with_noise(z, delta)
    }

    /// `Z` on the mask, in edge order.
    pub fn observed(&self) -> Vec<f64> {
        match &self.observations {
            Some(z) => z.clone(),
            None => self.mask.edges().iter().map(|&(i, j)| self.y[(i, j)]).collect(),
        }
    }

    /// Zero-filled observation matrix `P_E(Z)`.
    pub fn zero_filled(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.y.rows(), self.y.cols());
        for (&(i, j), z) in self.mask.edges().iter().zip(self.observed()) {
            m[(i, j)] = z;
        }
        m
    }

    pub fn is_fully_observed(&self) -> bool {
        self.mask.num_edges() == self.y.rows() * self.y.cols()
    }
}

/// Rank-one sign matrix `u v^T` with independent uniform signs.
pub fn random_sign_rank_one(n: usize, m: usize, rng: &mut RngStream) -> DenseMatrix {
    let sign = |rng: &mut RngStream| if rng.coin() { 1.0 } else { -1.0 };
    let u: Vec<f64> = (0..n).map(|_| sign(rng)).collect();
    let v: Vec<f64> = (0..m).map(|_| sign(rng)).collect();
    DenseMatrix::from_fn(n, m, |i, j| u[i] * v[j])
}

/// On-disk instance: `{"y": [[..], ..], "mask": <graph>, "observations"?: [..], "delta"?: x}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub y: Vec<Vec<f64>>,
    pub mask: GraphFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observations: Option<Vec<f64>>,
    #[serde(default)]
    pub delta: f64,
}

impl From<&CompletionInstance> for InstanceFile {
    fn from(inst: &CompletionInstance) -> Self {
        Self {
            y: inst.y.to_rows(),
            mask: GraphFile::from(&inst.mask),
            observations: inst.observations.clone(),
            delta: inst.delta,
        }
    }
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<CompletionInstance> {
        let inst = CompletionInstance::new(DenseMatrix::from_rows(&self.y)?, self.mask.to_graph()?)?;
        match &self.observations {
            Some(z) => inst.with_noise(z.clone(), self.delta),
            None if self.delta > 0.0 => {
                let z = inst.observed();
                inst.with_noise(z, self.delta)
            }
            None => Ok(inst),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::sample_simple;

    #[test]
    fn shape_and_degree_checks() {
        let mask = BipartiteGraph::complete(2, 3);
        assert!(CompletionInstance::new(DenseMatrix::zeros(3, 2), mask.clone()).is_err());
        let ragged = BipartiteGraph::new(2, 3, 3, 2, vec![(0, 0), (0, 1), (0, 2), (1, 0)]).unwrap();
        assert!(CompletionInstance::new(DenseMatrix::zeros(2, 3), ragged).is_err());
        let inst = CompletionInstance::new(DenseMatrix::zeros(2, 3), mask).unwrap();
        assert!(inst.is_fully_observed());
        assert!(inst.clone().with_noise(vec![0.0; 5], 0.1).is_err());
        assert!(inst.with_noise(vec![0.0; 6], -1.0).is_err());
    }

    #[test]
    fn noise_respects_budget() {
        let mut rng = RngStream::new(1);
        let mask = sample_simple(8, 12, 3, 2, &mut rng, 100_000).unwrap().graph;
        let y = random_sign_rank_one(8, 12, &mut rng);
        let inst = CompletionInstance::new(y, mask).unwrap().with_uniform_noise(0.1, &mut rng).unwrap();
        let clean: Vec<f64> = inst.mask.edges().iter().map(|&(i, j)| inst.y[(i, j)]).collect();
        let mse = inst.observed().iter().zip(&clean).map(|(z, y)| (z - y).powi(2)).sum::<f64>() / clean.len() as f64;
        assert!(mse <= 0.01);
    }

    #[test]
    fn file_round_trip() {
        let mut rng = RngStream::new(2);
        let mask = BipartiteGraph::complete(2, 3);
        let inst = CompletionInstance::new(random_sign_rank_one(2, 3, &mut rng), mask).unwrap();
        let text = serde_json::to_string(&InstanceFile::from(&inst)).unwrap();
        let back: InstanceFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_instance().unwrap(), inst);
    }
}
