use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed forest or word text.
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    /// A decoration token that is not part of the configured set.
    #[error("unknown decoration `{0}`")]
    UnknownDecoration(String),

    /// A decoration set that cannot be used (empty, duplicated or reserved tokens).
    #[error("invalid decoration set: {0}")]
    InvalidDecorationSet(String),

    /// A vertex index outside the forest.
    #[error("vertex {index} out of range for a forest of weight {weight}")]
    InvalidVertex { index: usize, weight: usize },

    /// An enumeration or search would exceed the configured size limit.
    #[error("{what}: {count} items exceed the limit of {cap}")]
    ResourceLimit { what: &'static str, count: String, cap: u128 },

    /// Tensors of different arities were combined.
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    /// An element expected to be primitive is not.
    #[error("element indexed by `{0}` is not primitive")]
    NotPrimitive(String),

    /// A required input is missing from a table.
    #[error("missing entry for `{0}`")]
    Missing(String),

    /// A grafting that does not fit its target.
    #[error("malformed grafting: {0}")]
    MalformedGrafting(String),

    /// The zero element where a nonzero one is required.
    #[error("zero element")]
    ZeroElement,

    /// A matrix that is singular or whose inverse is not integral.
    #[error("matrix error: {0}")]
    Matrix(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Default bound on the number of items any single enumeration may produce.
pub const DEFAULT_CAP: u128 = 1_000_000;

pub(crate) fn check_cap(what: &'static str, count: u128, cap: u128) -> Result<()> {
    if count > cap {
        Err(Error::ResourceLimit { what, count: count.to_string(), cap })
    } else {
        Ok(())
    }
}
