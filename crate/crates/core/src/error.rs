use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("divergent integral at {site}")]
    Divergent { site: DivergenceSite },

    #[error("profile is not monotone nonincreasing near t = {0}")]
    NotMonotone(f64),

    #[error("family does not match the (p, n) regime: {0}")]
    RegimeMismatch(String),

    #[error("matrix is singular or nearly singular")]
    SingularMatrix,

    #[error("point set has a degenerate (lower-dimensional) hull")]
    DegenerateHull,

    #[error("polytope volume unavailable: need vertices or facet offsets")]
    VolumeUnavailable,

    #[error("unsupported dimension n = {0}")]
    UnsupportedDimension(usize),

    #[error("unknown builtin: {0}")]
    UnknownBuiltin(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

/// Where an improper integral failed to converge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceSite {
    Zero,
    Infinity,
    Jump,
}

impl std::fmt::Display for DivergenceSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DivergenceSite::Zero => write!(f, "t -> 0+"),
            DivergenceSite::Infinity => write!(f, "t -> infinity"),
            DivergenceSite::Jump => write!(f, "a jump discontinuity"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
