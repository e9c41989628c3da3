use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("at {location}: unknown {kind} `{name}`")]
    UnknownName {
        kind: &'static str,
        name: String,
        location: String,
    },
    #[error("at {location}: duplicate {kind} `{name}`")]
    DuplicateName {
        kind: &'static str,
        name: String,
        location: String,
    },
    #[error("at {location}: relation terms are not parallel paths")]
    NonParallelRelation { location: String },
    #[error("at {location}: inadmissible relation: {reason}")]
    InadmissibleRelation { location: String, reason: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("algebra not certified finite-dimensional within path length cap {cap}")]
    CapExceeded { cap: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the associated category is not directed")]
    NotDirected,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid linear order: {0}")]
    InvalidOrder(String),
    #[error("equivalence violation: {0}")]
    EquivalenceViolation(String),
    #[error("property violation: {0}")]
    PropertyViolation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownName { .. }
            | Error::DuplicateName { .. }
            | Error::NonParallelRelation { .. }
            | Error::InvalidField(_)
            | Error::InvalidOrder(_) => 2,
            Error::BudgetExceeded(_) => 3,
            Error::PreconditionViolated(_) => 4,
            Error::NotDirected => 5,
            Error::CapExceeded { .. } => 6,
            Error::InadmissibleRelation { .. } => 7,
            Error::DimensionMismatch { .. } | Error::InvalidModule(_) => 8,
            Error::Io(_) => 9,
            Error::EquivalenceViolation(_) | Error::PropertyViolation(_) => 10,
        }
    }

    /// True for soundness alarms, which must never be silently ignored.
    pub fn is_alarm(&self) -> bool {
        matches!(
            self,
            Error::EquivalenceViolation(_) | Error::PropertyViolation(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
