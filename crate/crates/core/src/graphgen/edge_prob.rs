use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::sampler::{attempt_simple, AttemptBuffers};
use crate::numkernel::RngStream;

/// Default cap on raw configuration attempts.
pub const DEFAULT_RAW_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeProbabilityEstimate {
    /// `P(e in G | H in G)` estimated from the accepted samples.
    pub estimate: f64,
    /// Binomial standard error `sqrt(p(1-p)/hits)`.
    pub std_error: f64,
    /// Samples where `G` was simple and contained `H`.
    pub hits: u64,
    /// Of those, samples that also contained `e`.
    pub edge_hits: u64,
    /// Configuration attempts drawn, including rejected ones.
    pub raw_samples: u64,
}

/// Monte Carlo estimate of `P(e in G | H subset G)` for `G ~ G(n, m, d1, d2)`.
///
/// Uniform simple graphs are produced by rejecting non-simple configuration
/// samples, and the conditioning on `H` is done by rejection as well. The run
/// stops after `effective` accepted samples or `max_raw` attempts.
#[allow(clippy::too_many_arguments)]
pub fn conditional_edge_probability(
    n: usize,
    m: usize,
    d1: usize,
    d2: usize,
    h: &[(usize, usize)],
    e: (usize, usize),
    effective: u64,
    max_raw: u64,
    rng: &mut RngStream,
) -> Result<EdgeProbabilityEstimate> {
    if n == 0 || m == 0 || d1 == 0 || d2 == 0 {
        return Err(Error::InvalidParameters("n, m, d1, d2 must all be at least 1".into()));
    }
    if n * d1 != m * d2 {
        return Err(Error::DegreeMismatch { left: n * d1, right: m * d2 });
    }
    if h.len() > (n / 10).max(1) {
        return Err(Error::InvalidParameters(format!("|H| = {} exceeds n/10", h.len())));
    }
    for &(l, r) in h.iter().chain(std::iter::once(&e)) {
        if l >= n || r >= m {
            return Err(Error::InvalidParameters(format!("edge ({l}, {r}) out of range")));
        }
    }
    if h.contains(&e) {
        return Err(Error::InvalidParameters("candidate edge already in H".into()));
    }
    if effective == 0 {
        return Err(Error::InvalidParameters("effective sample count must be positive".into()));
    }

    let mut buf = AttemptBuffers::default();
    let contains = |edges: &[(usize, usize)], (l, r): (usize, usize)| {
        edges[l * d1..(l + 1) * d1].iter().any(|&(_, x)| x == r)
    };
    let (mut hits, mut edge_hits, mut raw) = (0u64, 0u64, 0u64);
    while hits < effective && raw < max_raw {
        raw += 1;
        if !attempt_simple(n, d1, d2, rng, &mut buf) {
            continue;
        }
        if h.iter().all(|&f| contains(&buf.edges, f)) {
            hits += 1;
            if contains(&buf.edges, e) {
                edge_hits += 1;
            }
        }
    }
    if hits == 0 {
        return Err(Error::ConditioningNeverHit(raw));
    }
    let p = edge_hits as f64 / hits as f64;
    Ok(EdgeProbabilityEstimate {
        estimate: p,
        std_error: (p * (1.0 - p) / hits as f64).sqrt(),
        hits,
        edge_hits,
        raw_samples: raw,
    })
}
