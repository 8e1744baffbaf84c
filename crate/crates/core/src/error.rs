use thiserror::Error;

/// Errors raised by carrier arithmetic, structure construction and the
/// checkers that have preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },

    #[error("unsupported carrier: {0}")]
    UnsupportedCarrier(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("size limit exceeded: {what} has {got} atoms, limit is {limit}")]
    SizeLimit {
        what: String,
        got: usize,
        limit: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
