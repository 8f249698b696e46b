use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input values violate a data invariant (non-finite attribute, ragged rows, ...).
    #[error("invalid data: {0}")]
    InvalidData(String),

    /// A caller broke an operation's precondition (K out of range, bad medoid index, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The problem is larger than this crate is willing to hold or enumerate.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Every point coincides with a current medoid, so the D² weights are all zero.
    #[error("degenerate D² distribution: every point coincides with a current medoid")]
    DegenerateDistribution,

    #[error(
        "candidate set too small: lambda = {lambda} admits {candidates} candidate(s) but K = {k}"
    )]
    CandidateSetTooSmall {
        lambda: f64,
        candidates: usize,
        k: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("class subset selected no points")]
    EmptySubset,

    #[error("manifest mismatch for `{id}`: expected {expected}, found {found}")]
    ManifestMismatch {
        id: String,
        expected: String,
        found: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
