//! Tanner codes over F2 on biregular graphs, with rate and distance bounds.

mod bounds;
mod component;
pub mod f2;
mod tanner;

pub use bounds::{corollary_bound, janwa_lal_bound, rate_lower_bound, DistanceBoundReport};
pub use component::ComponentCode;
pub use f2::{BitMatrix, BitVec};
pub use tanner::{min_distance_bruteforce, tanner_membership, TannerCode, DEFAULT_MAX_DIM};
