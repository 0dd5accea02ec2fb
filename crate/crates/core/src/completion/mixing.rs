use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::BipartiteGraph;
use crate::numkernel::RngStream;
use crate::spectra::adjacency_spectrum;

/// Bipartite expander mixing check for one pair of vertex subsets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixingCheck {
    /// `|E(A,B)/|E| - |A||B|/(nm)|`.
    pub lhs: f64,
    /// `eta / sqrt(d1 d2) * sqrt(|A||B||A^c||B^c|) / (nm)`.
    pub rhs: f64,
    pub satisfied: bool,
}

/// Second singular value of the biadjacency matrix (0 when there is none),
/// the `eta` used by the mixing lemma.
pub fn measured_eta(g: &BipartiteGraph) -> Result<f64> {
    Ok(adjacency_spectrum(g)?.singulars.get(1).copied().unwrap_or(0.0))
}

fn membership(size: usize, set: &[usize], side: &str) -> Result<Vec<bool>> {
    let mut inside = vec![false; size];
    for &v in set {
        if v >= size {
            return Err(Error::InvalidParameters(format!("{side} vertex {v} out of range")));
        }
        if std::mem::replace(&mut inside[v], true) {
            return Err(Error::InvalidParameters(format!("{side} vertex {v} listed twice")));
        }
    }
    Ok(inside)
}

/// Compare the edge density between `A ⊆ V1` and `B ⊆ V2` with its
/// prediction, using `eta` as the spectral bound.
pub fn mixing_defect(g: &BipartiteGraph, a: &[usize], b: &[usize], eta: f64) -> Result<MixingCheck> {
    let (n, m) = (g.n(), g.m());
    let in_a = membership(n, a, "left")?;
    let in_b = membership(m, b, "right")?;
    let cross = g.edges().iter().filter(|&&(l, r)| in_a[l] && in_b[r]).count() as f64;
    let (sa, sb) = (a.len() as f64, b.len() as f64);
    let nm = (n * m) as f64;
    let lhs = (cross / g.num_edges() as f64 - sa * sb / nm).abs();
    let rhs = eta / ((g.d1() * g.d2()) as f64).sqrt() * (sa * sb * (n as f64 - sa) * (m as f64 - sb)).sqrt() / nm;
    Ok(MixingCheck { lhs, rhs, satisfied: lhs <= rhs + 1e-12 })
}

/// A uniformly random subset of `0..size` (one fair coin per vertex).
pub fn random_subset(size: usize, rng: &mut RngStream) -> Vec<usize> {
    (0..size).filter(|_| rng.coin()).collect()
}
