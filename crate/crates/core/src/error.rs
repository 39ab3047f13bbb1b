use thiserror::Error;

/// Errors raised by the knot machinery. Variant names double as the
/// machine-readable error names reported by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed code: {0}")]
    MalformedCode(String),

    #[error("code is not realizable by a closed curve on the sphere: {0}")]
    NotRealizable(String),

    #[error("assignment has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("crossing ceiling exceeded: {crossings} crossings > limit {limit}")]
    ResourceLimit { crossings: usize, limit: usize },

    #[error("zero polynomial has no degree bounds")]
    ZeroPolynomial,

    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },

    #[error("duplicate knot name {0}")]
    DuplicateName(String),

    #[error("knot {0} is not in the table")]
    UnknownKnot(String),

    #[error("table is complete only through {complete_through} crossings, {needed} required")]
    TableInsufficient { needed: usize, complete_through: usize },

    #[error("empty diagram set")]
    EmptySet,

    #[error("missing annotation {annotation} for {knot}")]
    MissingAnnotation { knot: String, annotation: String },
}

impl Error {
    /// Stable identifier of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedCode(_) => "MalformedCode",
            Error::NotRealizable(_) => "NotRealizable",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ParseError { .. } => "ParseError",
            Error::DuplicateName(_) => "DuplicateName",
            Error::UnknownKnot(_) => "UnknownKnot",
            Error::TableInsufficient { .. } => "TableInsufficient",
            Error::EmptySet => "EmptySet",
            Error::MissingAnnotation { .. } => "MissingAnnotation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
