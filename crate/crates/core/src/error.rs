use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyAlphabet,
    DuplicateSymbol(String),
    DuplicateVertex(String),
    /// A letter index outside the alphabet.
    InvalidLetter(usize),
    /// A vertex index outside the vertex list.
    InvalidVertex(usize),
    DuplicateEdge {
        source: String,
        range: String,
        label: String,
    },
    EmptyForbiddenWord,
    EmptyPeriod,
    /// The presentation has no bi-infinite path.
    EmptyShift,
    SemigroupTooLarge {
        limit: usize,
    },
    CoverInconsistency(String),
    ZeroRowOrColumn {
        index: usize,
        row: bool,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyAlphabet => write!(f, "alphabet is empty"),
            Error::DuplicateSymbol(s) => write!(f, "duplicate symbol `{s}`"),
            Error::DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            Error::InvalidLetter(i) => write!(f, "letter index {i} is outside the alphabet"),
            Error::InvalidVertex(i) => write!(f, "vertex index {i} is out of range"),
            Error::DuplicateEdge {
                source,
                range,
                label,
            } => write!(f, "duplicate edge {source} -> {range} labeled `{label}`"),
            Error::EmptyForbiddenWord => write!(f, "forbidden words must be nonempty"),
            Error::EmptyPeriod => write!(f, "the period of a ray must be nonempty"),
            Error::EmptyShift => write!(f, "empty shift: the presentation has no bi-infinite path"),
            Error::SemigroupTooLarge { limit } => {
                write!(f, "transition semigroup exceeds {limit} elements")
            }
            Error::CoverInconsistency(msg) => write!(f, "cover inconsistency: {msg}"),
            Error::ZeroRowOrColumn { index, row } => {
                let what = if *row { "row" } else { "column" };
                write!(f, "edge matrix has a zero {what} at index {index}")
            }
        }
    }
}

impl core::error::Error for Error {}
