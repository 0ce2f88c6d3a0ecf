use thiserror::Error;

/// Errors raised by the library surface.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate hull: {0}")]
    DegenerateHull(String),

    #[error("too few points: {0}")]
    TooFewPoints(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("size mismatch: {0}")]
    Mismatch(String),

    #[error("guard exceeded: {what} has {actual}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("cap exceeded: more than {0} objects")]
    CapExceeded(u64),

    #[error("invalid weights: {0}")]
    InvalidAlpha(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateHull(_) => "degenerate_hull",
            Error::TooFewPoints(_) => "too_few_points",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::InvalidPointSet(_) => "invalid_point_set",
            Error::InvalidTriangulation(_) => "invalid_triangulation",
            Error::Mismatch(_) => "mismatch",
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::InvalidAlpha(_) => "invalid_alpha",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
