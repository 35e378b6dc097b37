use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid bounds in dimension {dim}: lower {lower} exceeds upper {upper}")]
    InvalidBounds { dim: usize, lower: f64, upper: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("objective `{objective}` returned non-finite cost {cost} at position {position:?}")]
    NonFiniteCost {
        objective: String,
        cost: f64,
        position: Vec<f64>,
    },

    #[error("`{name}` requires {rule}, got dimension {dim}")]
    IncompatibleDimension {
        name: String,
        rule: &'static str,
        dim: usize,
    },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("unknown {kind} `{name}` (available: {available})")]
    Unknown {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("ragged matrix: row {row} has {got} entries, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, got: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}
