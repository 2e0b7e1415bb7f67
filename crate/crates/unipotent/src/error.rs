use thiserror::Error;

/// Every failure the library can report.
///
/// `Consistency` marks a broken internal invariant; everything else is a
/// domain error caused by the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("partition {partition} is not of type {form}")]
    TypeMismatch { partition: String, form: String },

    #[error("no {form}-partition of total {total} exists")]
    NoValidPartition { form: String, total: usize },

    #[error("partitions have different totals ({0} vs {1})")]
    TotalMismatch(usize, usize),

    #[error("infinitesimal characters are not comparable: {0}")]
    IncomparableInfChar(String),

    #[error("invalid tableau: {}", .0.join("; "))]
    InvalidTableau(Vec<String>),

    #[error("shape {shape} is not admissible: {reason}")]
    InvalidShape { shape: String, reason: String },

    #[error("part {part} has multiplicity {multiplicity}, more than two")]
    MultiplicityTooLarge { part: usize, multiplicity: usize },

    #[error("{form} carries no K-orbit on {shape}")]
    NoOrbits { form: String, shape: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
