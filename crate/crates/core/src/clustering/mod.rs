//! Frame-model spectral clustering: Markov matrices, lifting of frame
//! eigenpairs, the spurious-eigenvalue bound and recovery thresholds.

mod cluster;
mod markov;
mod rsbm;
mod wan;

pub use cluster::{
    accuracy, cluster_csv, spectral_cluster, spectral_cluster_matrix, ClusterResult, DEFAULT_GROUP_TOL,
    FRAME_MATCH_TOL, MIN_EIGENGAP,
};
pub use markov::{
    frame_eigenpairs, frame_markov, lift_eigvec, markov, FrameMarkov, FrameOperator, FramePair, Lifted, MarkovView,
};
pub use rsbm::{rsbm_thresholds, RsbmThresholds};
pub use wan::{block_ratios, suggested_c, wan_bound, BlockRatio, WanBound};
