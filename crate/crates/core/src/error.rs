use thiserror::Error;

/// Errors shared by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation hits a pole: {0}")]
    Pole(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree {requested} exceeds the supported bound {bound}")]
    DegreeBound { requested: usize, bound: usize },
    #[error("no kernel available for operator {0}")]
    UnknownKernel(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("Q-grading invariant violated: {0}")]
    GradingViolation(String),
    #[error("missing correlator for subword {0}")]
    MissingSubword(String),
    #[error("fixed point {point} has no weight for bundle {bundle:?}")]
    MissingBundle { point: usize, bundle: String },
    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
