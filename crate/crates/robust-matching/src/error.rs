use thiserror::Error;

/// Errors across the crate. Negative results ("no robust matching",
/// "infeasible") are not errors; operations return `Option`/enum results for
/// those.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size limit: {0}")]
    SizeLimit(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Join/meet of matchings that were not both stable may fail to be a
    /// permutation; this is data, not a crash.
    #[error("join/meet result is not a matching (inputs not both stable?)")]
    NotAMatching,

    #[error("no unique extremum: {0}")]
    NoUniqueExtremum(String),

    /// Theta landed exactly on an interior subinterval boundary; the caller
    /// should retry with a perturbed theta.
    #[error("theta lies on a subinterval boundary")]
    BoundaryTheta,

    #[error("bouquet hypothesis violated: {0}")]
    HypothesisViolation(String),

    /// A structural guarantee the algorithms rely on failed at runtime.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
