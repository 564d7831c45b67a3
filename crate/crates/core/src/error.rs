use thiserror::Error;

/// Errors produced by the library.
///
/// `Invariant` is special: it reports a violated internal law (a lemma
/// condition, a rank bound, a weight ledger) and signals an implementation
/// bug, never bad user input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Frobenius symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
