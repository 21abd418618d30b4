use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("quiver is not a simply-laced Dynkin quiver")]
    NotDynkin,

    #[error("objects live over different quivers")]
    QuiverMismatch,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{0} is not a positive root")]
    NotARoot(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a degeneration")]
    NotDegeneration,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computed value contradicts a result the pipeline relies on. Valid
    /// input never reaches this; it signals a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
