use thiserror::Error;

/// Errors raised by the geometry and zeta-function routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero covector")]
    ZeroCovector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point not in frame span")]
    NotInFrameSpan,

    #[error("normal space not a line: directions have rank {rank}, need {expected}")]
    NormalSpaceNotLine { rank: usize, expected: usize },

    #[error("support of empty polytope")]
    EmptyPolytope,

    #[error("not full-dimensional: dimension {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: i64, ambient: usize },

    #[error("polytope has a vertex with a negative coordinate")]
    NegativeCoordinates,

    #[error("polytope is not contained in the coordinate subspace of {0}")]
    OutsideIndexSet(String),

    #[error("frame mismatch: {0}")]
    FrameMismatch(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("objective polynomial F0 is required")]
    MissingObjective,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// True for errors caused by a violated internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
