use thiserror::Error;

/// Errors raised while ingesting presentations or computing invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("generator index out of range: {index} (strand count {strands})")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("not a knot: closure has {components} components")]
    NotAKnot { components: usize },
    #[error("arc label {label} appears {count} times (expected exactly 2)")]
    LabelMultiplicity { label: i64, count: usize },
    #[error("inconsistent orientation: {0}")]
    Orientation(String),
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),
    #[error("nonsingular Seifert matrix required")]
    SingularSeifert,
    #[error("degenerate presentation: {0}")]
    Degenerate(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("odd value where an even one is required: {0}")]
    OddValue(i64),
    #[error("internal error: {0}")]
    Internal(String),
}

impl KnotError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        KnotError::Parse { line, column, message: message.into() }
    }

    /// Input errors map to exit code 1, internal failures to exit code 2.
    pub fn is_internal(&self) -> bool {
        matches!(self, KnotError::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, KnotError>;
