use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime that fits in 63 bits")]
    NotPrime(u64),
    #[error("cannot parse field spec `{0}` (expected `q` or `fp:<prime>`)")]
    BadFieldSpec(String),
    #[error("value has denominator divisible by the characteristic {0}")]
    NotInvertible(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index ({row}, {col}) out of range for a {nrows}x{ncols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs have different vertex counts ({0} and {1})")]
    VertexCountMismatch(usize, usize),
    #[error("edges {0} and {1} do not cross")]
    NotCrossing(usize, usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("straightening exceeded {0} rewrite steps")]
    StepLimit(usize),
    #[error("enumeration truncated at {0} graphs")]
    Truncated(usize),
    #[error("coefficient overflow during straightening")]
    Overflow,
    #[error("{0}")]
    Invalid(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
