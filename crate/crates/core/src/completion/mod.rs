//! Matrix completion from biregular observation masks: mixing checks,
//! `gamma_2` bounds, a trace-norm solver and error certificates.

mod certify;
mod gamma;
mod instance;
mod mixing;
mod solver;

pub use certify::{certify, BoundCertificate, GAMMA2_NOTE, KG_CONSTANT, PAPER_C};
pub use gamma::{gamma2_upper, trace_norm, Gamma2Bounds};
pub use instance::{random_sign_rank_one, CompletionInstance, InstanceFile};
pub use mixing::{measured_eta, mixing_defect, random_subset, MixingCheck};
pub use solver::{solve_trace_norm, solve_trace_norm_with, Completion, SolverOptions};
