use thiserror::Error;

use crate::structure::Certificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad ids, bad parameters, unparsable files.
    #[error("input error: {0}")]
    Input(String),

    /// The operation is not defined for this input (e.g. a forest-only
    /// routine called on a graph with a cycle).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The instance is larger than the configured enumeration cap.
    #[error("instance too large: {what} is {size}, cap is {cap}")]
    Size {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// A solver that needs `Δ(G) <= bound` was handed a graph that provably
    /// violates it.
    #[error("bound exceeded: {0}")]
    BoundExceeded(Box<Certificate>),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
