use thiserror::Error;

use crate::surface::ArcId;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid marked surface: {0}")]
    InvalidSurface(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("unknown arc {0}")]
    UnknownArc(ArcId),

    #[error("arcs must be distinct, got {0} twice")]
    SameArc(ArcId),

    #[error("index {index} out of range for a {size}x{size} exchange matrix")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("row {row} of the c-matrix is not sign-coherent")]
    SignIncoherent { row: usize },

    #[error("vertex budget of {budget} exceeded during enumeration")]
    BudgetExceeded { budget: usize },

    #[error("graph is truncated; {0} needs a fully enumerated exchange graph")]
    Truncated(&'static str),

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("unsupported quiver pattern: {0}")]
    UnsupportedPattern(String),

    #[error("no faithful braid oracle for this surface: {0}")]
    OracleUnavailable(String),

    #[error("frame does not match the quiver: {0}")]
    FrameMismatch(String),

    #[error("vertices belong to different cover balls")]
    ForeignBall,

    #[error("connection could not be solved: {0}")]
    Connection(String),

    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
