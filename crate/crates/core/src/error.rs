use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed fold program: {0}")]
    MalformedProgram(String),
    #[error("closed program does not close: {0}")]
    Closure(String),
    #[error("inconsistent layout: {0}")]
    Inconsistent(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate diagram: {0}")]
    DegenerateDiagram(String),
    #[error("layering inconsistency: {0}")]
    Layering(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
