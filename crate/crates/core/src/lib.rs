//! Random bipartite biregular graphs and their spectra.
//!
//! The crate samples `(d1, d2)`-biregular bipartite graphs, computes the
//! adjacency spectrum, derives the non-backtracking spectrum through the
//! Ihara-Bass determinant identity, and certifies spectral-gap bounds on
//! sampled graphs. Three applications sit on top of the gap: spectral
//! community detection in frame graphs, Tanner-code distance bounds, and
//! error certificates for matrix completion on biregular masks.
//!
//! The guide in `book/` walks through each piece with runnable snippets;
//! those snippets are compiled as doc-tests of this crate.

pub mod clustering;
pub mod codes;
pub mod completion;
pub mod error;
pub mod graphgen;
pub mod numkernel;
pub mod spectra;

pub use error::{Error, Result};

/// Library version embedded in every CLI output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/ihara.md")]
    mod ihara {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/clustering.md")]
    mod clustering {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/completion.md")]
    mod completion {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
