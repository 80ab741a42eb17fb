use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: i64, found: i64 },

    #[error("elements belong to different geometries")]
    GeometryMismatch,

    #[error("function has a pole outside the puncture set and infinity")]
    SupportViolation,

    #[error("denominator does not split into rational linear factors")]
    NonRationalPoles,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("algebra tag mismatch: {0}")]
    TagMismatch(String),

    #[error("critical level: c + kappa = 0 for the {part} part")]
    CriticalLevel { part: String },

    #[error("central defect is not scalar: {0}")]
    NonScalarDefect(String),

    #[error("singular diagonal entry at k = {k}")]
    SingularDiagonal { k: i64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
