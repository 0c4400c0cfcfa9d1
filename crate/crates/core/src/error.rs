use std::fmt;

/// Error type shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (bad dimensions, zero-sum violation,
    /// unknown node ids, negative margins, ...).
    InvalidInput(String),
    /// A cyclic network with uncapacitated arcs cannot be reduced to
    /// acyclic uncapacitated form.
    Unreducible(String),
    /// The brute-force oracle detected a potentially infinite flow set.
    InfiniteCount(String),
    /// An internal consistency assertion failed. Indicates a bug, never a
    /// bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Unreducible(msg) => write!(f, "unreducible network: {msg}"),
            Error::InfiniteCount(msg) => write!(f, "infinite flow set: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
