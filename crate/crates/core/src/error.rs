use thiserror::Error;

/// Errors raised by constructions and parsers in this crate.
///
/// Identity checks never return these for a *failed* identity; a failure is
/// data recorded in a [`crate::report::Report`]. These errors signal that a
/// computation could not be carried out at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("semiring violation at position {position}: {message}")]
    SemiringViolation { position: usize, message: String },

    #[error("trivialization is not a two-sided inverse: {0}")]
    BadTrivialization(String),

    #[error("bracket precondition failed: {0}")]
    Precondition(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("base is not terminal (base dimension {0})")]
    BaseNotTerminal(usize),

    #[error("not a bundle morphism: {0}")]
    NotBundleMorphism(String),

    #[error("no inverse: {0}")]
    NotInvertible(String),

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),

    #[error("morphism is not vertical: {0}")]
    NotVertical(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("bundle description: {0}")]
    BundleFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_mismatch(msg: impl Into<String>) -> Error {
    Error::DimensionMismatch(msg.into())
}
