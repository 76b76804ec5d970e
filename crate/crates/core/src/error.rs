use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
///
/// Messages name the violated precondition so that callers (in particular the
/// CLI) can surface them verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("N too small for relation band reach: {0}")]
    BasisTooSmall(String),

    #[error("N too large for the bound window: {0}")]
    BasisTooLarge(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
