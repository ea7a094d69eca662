use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("unsupported operand: {0}")]
    UnsupportedOperand(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: mixed volume at sample {index} is {value:e}")]
    DegenerateSample { index: u64, value: f64 },

    #[error("degenerate body: affine dimension {affine_dim} < {dim}")]
    DegenerateBody { affine_dim: usize, dim: usize },

    #[error("map is not unimodular: det = {0}")]
    NotUnimodular(f64),

    #[error("too many bodies for inclusion-exclusion: {0} > 12")]
    TooManyBodies(usize),

    #[error("singular fitting system")]
    SingularSystem,

    #[error("gave up after {0} attempts to draw a full-dimensional body")]
    RetryExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
