use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation would enumerate `2^m` subsets with `m` above the cap.
    #[error("ground set of size {size} exceeds the enumeration cap {cap}")]
    EnumerationLimit { size: usize, cap: usize },

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("invalid set function: {0}")]
    InvalidFunction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no valid instance after {attempts} attempts (seed {seed})")]
    SeedExhausted { attempts: usize, seed: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// A produced witness or certificate failed its own re-verification.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Wraps an error for a serde deserializer without repeating the parse prefix.
pub(crate) fn de_error<E: serde::de::Error>(e: Error) -> E {
    match e {
        Error::Parse(m) => E::custom(m),
        other => E::custom(other),
    }
}
