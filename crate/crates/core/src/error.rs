use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field elements live at different tower levels ({left} vs {right})")]
    LevelMismatch { left: u32, right: u32 },

    #[error("tower level {requested} exceeds the configured cap {cap}")]
    LevelCap { requested: u32, cap: u32 },

    #[error("cannot lift an element from level {from} down to level {to}")]
    LiftDown { from: u32, to: u32 },

    #[error("not a dyadic rational in (0, 1): {0}")]
    NotDyadic(String),

    #[error("size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("index set is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed plan: {0}")]
    MalformedPlan(String),

    #[error("exact verification is limited to n <= {cap}, plan has n = {n}")]
    ExactSizeCap { n: usize, cap: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
