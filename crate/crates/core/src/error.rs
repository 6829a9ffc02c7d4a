use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {0:?}: {1}")]
    ParseScalar(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation #{index}: {reason}")]
    InvalidRelation { index: usize, reason: String },
    #[error("degree {degree} exceeds truncation degree {truncation}")]
    Truncation { degree: i64, truncation: i64 },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different presentations")]
    BaseMismatch,
    #[error("relation #{index} has degree {degree}, expected a quadratic presentation")]
    NotQuadratic { index: usize, degree: usize },
    #[error("algebra is not admissible: {0}")]
    NotAdmissible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid translation quiver: {0}")]
    MeshInconsistent(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
