use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("birth date {birth} is not before {as_of}")]
    InvalidDateOrder {
        birth: chrono::NaiveDate,
        as_of: chrono::NaiveDate,
    },

    /// The raw value matched no crisp rule of the criterion. Usually means the
    /// candidate is ineligible (for example age outside every bracket).
    #[error("{}no crisp rule of {criterion} matches {value}", candidate_prefix(.candidate))]
    NoMatchingRule {
        candidate: Option<u64>,
        criterion: String,
        value: String,
    },

    #[error("no eligible candidates in batch")]
    EmptyBatch,

    #[error("cost criterion {criterion} has a zero value for candidate {candidate}")]
    CostZeroValue { criterion: String, candidate: u64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("duplicate candidate: same name and birth date as id {existing}")]
    DuplicateCandidate { existing: u64 },

    #[error("{what} {id} not found")]
    NotFound { what: &'static str, id: u64 },

    #[error("batch {0} has not been executed")]
    NoResults(u64),

    #[error("criteria config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn candidate_prefix(candidate: &Option<u64>) -> String {
    match candidate {
        Some(id) => format!("candidate {id}: "),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn validation(field: &str, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
