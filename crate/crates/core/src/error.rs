use thiserror::Error;

pub type Result<T> = std::result::Result<T, HullError>;

#[derive(Debug, Error)]
pub enum HullError {
    #[error("point set has no points")]
    NoPoints,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("non-finite coordinate at point {index}")]
    NonFinite { index: usize },

    #[error("p and p' coincide; no bisecting hyperplane exists")]
    CoincidentPoints,

    #[error("hyperplane normal is the zero vector")]
    ZeroNormal,

    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input pair is not a witness pair (bisector does not separate the hulls)")]
    NotWitness,

    #[error("both classes must be present")]
    SingleClass,

    #[error("oracle size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("cached dot products are stale")]
    StaleCache,

    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
