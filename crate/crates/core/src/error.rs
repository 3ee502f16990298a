use thiserror::Error;

/// Errors shared by the library operations.
///
/// Validation findings are not errors: validators return reports. An `Error`
/// means the operation could not produce a result at all.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("missing chi for surface vertex `{0}`")]
    MissingChi(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A matching-vector layer with no matching: a verdict of its own, since
    /// callers treat it as a result rather than a malformed input.
    #[error("layer {layer} admits no matching")]
    NoMatching { layer: u64 },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("cancelled")]
    Cancelled,
    /// Tripwire for bugs: raised by internal guards that are unreachable
    /// when the documented preconditions hold.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
