use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence { method: &'static str, iterations: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degree mismatch: n*d1 = {left} but m*d2 = {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("no simple graph after {0} attempts")]
    SimplicityBudgetExhausted(usize),

    #[error("graph is not simple (contains parallel edges)")]
    Multigraph,

    #[error("vertex {0} out of range")]
    InvalidVertex(usize),

    #[error("frame violates balance: p[{i}]*D[{i}][{j}] != p[{j}]*D[{j}][{i}]")]
    Unbalanced { i: usize, j: usize },

    #[error("class {class} has non-integral size {size}")]
    NonIntegralClass { class: usize, size: f64 },

    #[error("vertex {0} has zero degree")]
    ZeroDegree(usize),

    #[error("conditioning event was never observed in {0} raw samples")]
    ConditioningNeverHit(u64),

    #[error("lambda = {0} is too close to an excluded point (0 or +-1)")]
    ExcludedLambda(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("code dimension {dim} exceeds the enumeration budget {max}")]
    DimensionOverBudget { dim: usize, max: usize },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
