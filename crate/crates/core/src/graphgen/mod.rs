//! Sampling bipartite biregular random graphs and frame graphs, and checking
//! their structure.

mod bipartite;
mod edge_prob;
mod frame;
mod io;
mod sampler;
mod tangle;

pub use bipartite::{validate, BipartiteGraph, DegreeViolation, Diagnostics};
pub use edge_prob::{conditional_edge_probability, EdgeProbabilityEstimate, DEFAULT_RAW_BUDGET};
pub use frame::{sample_frame_graph, sample_regular, Frame, FrameGraph};
pub use io::{FrameGraphFile, GraphFile};
pub use sampler::{sample_configuration, sample_exploration, sample_simple, SimpleSample, DEFAULT_MAX_ATTEMPTS};
pub use tangle::{ball, tangle_free, Ball, TangleReport};
