use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("functions live on different groups")]
    GroupMismatch,

    #[error("expected {expected} values, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("{points} points exceed the cap of {cap}")]
    TooLarge { points: usize, cap: usize },

    #[error("operation not available on this model: {0}")]
    WrongModel(String),

    #[error("family members live on different carriers")]
    CarrierMismatch,

    #[error("family has no members")]
    EmptyFamily,

    #[error("duplicate member name `{0}`")]
    DuplicateName(String),

    #[error("dual grid size is required for this group")]
    UnconfiguredDualGrid,

    #[error("family has no generator to extend it")]
    GeneratorUnavailable,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier used in structured CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::GroupMismatch => "GroupMismatch",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::NonFinite(_) => "NonFinite",
            Error::TooLarge { .. } => "TooLarge",
            Error::WrongModel(_) => "WrongModel",
            Error::CarrierMismatch => "CarrierMismatch",
            Error::EmptyFamily => "EmptyFamily",
            Error::DuplicateName(_) => "DuplicateName",
            Error::UnconfiguredDualGrid => "UnconfiguredDualGrid",
            Error::GeneratorUnavailable => "GeneratorUnavailable",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
