//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by word, point, and attractor operations.
///
/// Every variant carries a stable machine-readable code (see
/// [`Error::code`]) so that front ends can map failures without parsing
/// display strings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different alphabets")]
    AlphabetMismatch,
    #[error("letter {0:?} is not a member of the alphabet")]
    UnknownLetter(String),
    #[error("invalid letter {0:?}: {1}")]
    InvalidLetter(String, &'static str),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("the distinguished letter carries no coordinate")]
    ZCoordinate,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("invalid exponent {0:?}: p must be a finite decimal >= 1")]
    InvalidExponent(String),
    #[error("point set must be non-empty")]
    EmptyPointSet,
    #[error("sequence must be non-empty")]
    EmptySequence,
    #[error("letter subset must be non-empty")]
    EmptyLetterSet,
    #[error("iteration would exceed the point cap of {limit} ({requested} points required)")]
    PointCapExceeded { limit: usize, requested: usize },
    #[error("no repeating residual within {max_depth} steps; word is undecidable at this depth")]
    DepthExceeded { max_depth: usize },
    #[error("point is not on the attractor: {0}")]
    NotOnAttractor(String),
    #[error("{what} {requested} exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    #[error("point has a nonzero coordinate at {0:?}, which is outside the declared column list")]
    CsvColumnMissing(String),
    #[error("malformed csv: {0}")]
    CsvShape(String),
}

impl Error {
    /// Stable identifier for this error kind, used verbatim in machine
    /// output such as the CLI error stream.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AlphabetMismatch => "alphabet_mismatch",
            Error::UnknownLetter(_) => "unknown_letter",
            Error::InvalidLetter(_, _) => "invalid_letter",
            Error::InvalidAlphabet(_) => "invalid_alphabet",
            Error::ZCoordinate => "z_coordinate",
            Error::InvalidWord(_) => "invalid_word",
            Error::InvalidRational(_) => "invalid_rational",
            Error::InvalidExponent(_) => "invalid_exponent",
            Error::EmptyPointSet => "empty_point_set",
            Error::EmptySequence => "empty_sequence",
            Error::EmptyLetterSet => "empty_letter_set",
            Error::PointCapExceeded { .. } => "point_cap_exceeded",
            Error::DepthExceeded { .. } => "depth_exceeded",
            Error::NotOnAttractor(_) => "not_on_attractor",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::CsvColumnMissing(_) => "csv_column_missing",
            Error::CsvShape(_) => "csv_shape",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
