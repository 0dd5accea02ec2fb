//! Configuration-model samplers for `G(n, m, d1, d2)`.
//!
//! Left half-edge `k` belongs to left vertex `k / d1`; right half-edge `k`
//! to right vertex `k / d2`. A sample is a uniform perfect matching between
//! the two half-edge sets.

use crate::error::{Error, Result};
use crate::graphgen::BipartiteGraph;
use crate::numkernel::RngStream;

/// Default attempt budget for [`sample_simple`].
///
/// The chance that a configuration sample is simple tends to
/// `exp(-(d1-1)(d2-1)/2)`, about `2.5e-3` for `(7, 3)` and `3.7e-6` for
/// `(6, 6)`, so the budget has to be generous. Attempts abort at the first
/// parallel edge and are cheap.
pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000_000;

fn check_params(n: usize, m: usize, d1: usize, d2: usize) -> Result<()> {
    if n == 0 || m == 0 || d1 == 0 || d2 == 0 {
        return Err(Error::InvalidParameters("n, m, d1, d2 must all be at least 1".into()));
    }
    if n * d1 != m * d2 {
        return Err(Error::DegreeMismatch { left: n * d1, right: m * d2 });
    }
    Ok(())
}

/// Configuration model: shuffle the right half-edges and match them to the
/// left half-edges in order.
pub fn sample_configuration(n: usize, m: usize, d1: usize, d2: usize, rng: &mut RngStream) -> Result<BipartiteGraph> {
    check_params(n, m, d1, d2)?;
    let total = n * d1;
    let mut perm: Vec<usize> = (0..total).collect();
    rng.shuffle(&mut perm);
    let edges = perm.iter().enumerate().map(|(k, &p)| (k / d1, p / d2)).collect();
    BipartiteGraph::new(n, m, d1, d2, edges)
}

/// Exploration process: left half-edges in lexicographic order each pick a
/// uniform unmatched right half-edge. Same law as [`sample_configuration`].
pub fn sample_exploration(n: usize, m: usize, d1: usize, d2: usize, rng: &mut RngStream) -> Result<BipartiteGraph> {
    check_params(n, m, d1, d2)?;
    let total = n * d1;
    let mut pool: Vec<usize> = (0..total).collect();
    let mut edges = Vec::with_capacity(total);
    for k in 0..total {
        let remaining = total - k;
        let j = rng.index(remaining);
        let half = pool.swap_remove(j);
        edges.push((k / d1, half / d2));
    }
    BipartiteGraph::new(n, m, d1, d2, edges)
}

/// A simple graph together with the number of configuration attempts used.
#[derive(Debug, Clone)]
pub struct SimpleSample {
    pub graph: BipartiteGraph,
    pub attempts: usize,
}

/// Rejection sampling of a simple graph: configuration samples are drawn
/// until one has no parallel edge, giving the uniform law on simple
/// `(d1, d2)`-biregular graphs.
///
/// Each attempt reveals the matching through the exploration process and
/// is abandoned at the first repeated pair; since all half-edges of a left
/// vertex are matched consecutively, a repeat can only occur within the
/// current vertex. An abandoned attempt is a rejected configuration sample,
/// so the accepted law is unchanged.
pub fn sample_simple(
    n: usize,
    m: usize,
    d1: usize,
    d2: usize,
    rng: &mut RngStream,
    max_attempts: usize,
) -> Result<SimpleSample> {
    check_params(n, m, d1, d2)?;
    if max_attempts == 0 {
        return Err(Error::InvalidParameters("max_attempts must be at least 1".into()));
    }
    if d1 > m || d2 > n {
        return Err(Error::SimplicityBudgetExhausted(0));
    }
    let mut buf = AttemptBuffers::default();
    for attempt in 1..=max_attempts {
        if attempt_simple(n, d1, d2, rng, &mut buf) {
            let graph = BipartiteGraph::new(n, m, d1, d2, std::mem::take(&mut buf.edges))?;
            debug_assert!(graph.is_simple());
            return Ok(SimpleSample { graph, attempts: attempt });
        }
    }
    Err(Error::SimplicityBudgetExhausted(max_attempts))
}

#[derive(Default)]
pub(crate) struct AttemptBuffers {
    pool: Vec<usize>,
    current: Vec<usize>,
    /// Edges in exploration order: left vertex `l` owns `edges[l*d1..(l+1)*d1]`.
    pub(crate) edges: Vec<(usize, usize)>,
}

/// One configuration attempt revealed by exploration, abandoned at the first
/// repeated pair. Returns whether the completed sample is simple.
pub(crate) fn attempt_simple(n: usize, d1: usize, d2: usize, rng: &mut RngStream, buf: &mut AttemptBuffers) -> bool {
    let total = n * d1;
    buf.pool.clear();
    buf.pool.extend(0..total);
    buf.edges.clear();
    for k in 0..total {
        if k % d1 == 0 {
            buf.current.clear();
        }
        let j = rng.index(total - k);
        let right = buf.pool.swap_remove(j) / d2;
        if buf.current.contains(&right) {
            return false;
        }
        buf.current.push(right);
        buf.edges.push((k / d1, right));
    }
    true
}
