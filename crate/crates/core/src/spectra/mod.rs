//! Adjacency and non-backtracking spectra of bipartite biregular graphs.
//!
//! The spectrum of the non-backtracking operator `B` is never computed by a
//! general eigensolver. It is assembled from the adjacency spectrum through
//! the Ihara-Bass correspondence, and the correspondence itself is checked
//! pointwise with determinants.

mod adjacency;
mod certificate;
mod correspondence;
mod export;
mod ihara;
mod nonbacktracking;

pub use adjacency::{adjacency_spectrum, RealSpectrum, RANK_TOL_FACTOR};
pub use certificate::{
    gap_certificate, Check, CheckStatus, GapCertificate, Relation, CHECK_ALON_BOPPANA, CHECK_FULL_RANK,
    CHECK_NONBACKTRACKING_BULK, CHECK_PERRON_VALUE, CHECK_PERRON_VECTOR, CHECK_RAMANUJAN_UPPER,
    CHECK_SMALLEST_POSITIVE, PERRON_VALUE_TOL, PERRON_VECTOR_TOL,
};
pub use correspondence::{quartic_lambda, spectrum_b_from_a, Category, NBEigenvalue, NBSpectrum};
pub use export::{adjacency_csv, csv_metadata, nonbacktracking_csv};
pub use ihara::{ihara_bass_residual, ihara_vertex_matrix, IharaResidual, EXCLUSION_RADIUS};
pub use nonbacktracking::{build_b, perron_check, NonBacktrackingOperator, PerronCheck};
