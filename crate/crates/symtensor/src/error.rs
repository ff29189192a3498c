use thiserror::Error;

/// Errors produced by tensor construction, evaluation, and the analysis
/// pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: tensor dimension {dim}, vector length {len}")]
    DimensionMismatch { dim: usize, len: usize },

    #[error("shape mismatch: order {order_a} dim {dim_a} vs order {order_b} dim {dim_b}")]
    ShapeMismatch {
        order_a: usize,
        dim_a: usize,
        order_b: usize,
        dim_b: usize,
    },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("tensor order must be at least 2, got {0}")]
    OrderTooSmall(usize),

    #[error("tensor dimension must be at least 1")]
    ZeroDimension,

    #[error("multi-index has {len} indices, expected {order}")]
    IndexLengthMismatch { len: usize, order: usize },

    #[error("conflicting values {existing} and {new} for the same symmetric entry")]
    ConflictingEntry { existing: f64, new: f64 },

    #[error("entry value must be finite, got {0}")]
    NonFiniteValue(f64),

    #[error("empty index set")]
    EmptyIndexSet,

    #[error("index set must be strictly increasing")]
    UnsortedIndexSet,

    #[error("factor component {value} at position {position} is negative")]
    NegativeFactor { position: usize, value: f64 },

    #[error("factor vector is identically zero")]
    ZeroFactor,

    #[error("tensor has negative entries")]
    NegativeEntries,

    #[error("tensor is not essentially nonnegative")]
    NotEssentiallyNonnegative,

    #[error("tensor is not essentially nonpositive")]
    NotEssentiallyNonpositive,

    #[error("tensor is not weakly irreducible")]
    NotWeaklyIrreducible,

    #[error(
        "power iteration did not converge within {iterations} iterations; \
         eigenvalue bracket [{lower}, {upper}]"
    )]
    NonConvergence {
        iterations: u64,
        lower: f64,
        upper: f64,
    },

    #[error("dimension {dim} exceeds the grid oracle limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("({lambda}, x) is not an eigenpair: residual {residual} exceeds {tolerance}")]
    NotAnEigenpair {
        lambda: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("vector has negative components")]
    NegativeVector,

    #[error("form value {value} is not within {tolerance} of zero")]
    NotAZero { value: f64, tolerance: f64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
