use thiserror::Error;

/// Errors shared by every solver operation.
///
/// The four variants map one-to-one onto the CLI exit codes: `Input` → 2,
/// `Infeasible` → 1, `Resource` and `Internal` → 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: dimension mismatch, index out of range, value outside
    /// its admissible range, or a violated operation precondition.
    #[error("input error: {0}")]
    Input(String),

    /// The inequality system (or a row subproblem) has no solution.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A configured resource bound would be exceeded (grid too large,
    /// permutation sweep too big). Never silently truncated.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A runtime assertion backed by a proved property failed. Indicates a
    /// bug in this library, not in the caller's input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
