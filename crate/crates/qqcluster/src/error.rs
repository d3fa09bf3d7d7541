use thiserror::Error;

use crate::quiver::VertexId;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through certificates.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown Dynkin type `{0}`")]
    UnknownType(String),
    #[error("node index {index} out of range 1..={rank}")]
    NodeOutOfRange { index: usize, rank: usize },
    #[error("malformed orientation: {0}")]
    BadOrientation(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("vertex {0} is not in the quiver")]
    MissingVertex(VertexId),
    #[error("vertex {0} is already colored")]
    AlreadyColored(VertexId),
    #[error("vertex {0} is frozen")]
    Frozen(VertexId),
    #[error("vertex {vertex} is within margin {margin} of the window boundary")]
    Margin { vertex: VertexId, margin: i64 },
    #[error("height collision at {0}")]
    HeightCollision(VertexId),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("parity: ({i},{r}) is not in the vertex set V")]
    Parity { i: usize, r: i64 },
    #[error("series error: {0}")]
    Series(String),
    #[error("term budget of {0} exceeded")]
    Budget(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("type {0} is not supported here")]
    Unsupported(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
