use thiserror::Error;

/// Errors raised by the library. Legitimate negative outcomes (no square
/// root, singular matrix, infeasible instance) are not errors and are
/// reported through return values instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("operands belong to different fields (p={left} and p={right})")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("prime {p} too small for n={n}: need p > {required}")]
    PrimeTooSmall { p: u64, n: usize, required: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },
    #[error("pfaffian is undefined for odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(u64),
    #[error("interpolation needs at least one point")]
    NoPoints,
    #[error("polynomial of degree {degree} exceeds bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("polynomial is not a perfect square")]
    NotASquare,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge ({u}, {v}, {w}) is not in the graph")]
    UnknownEdge { u: usize, v: usize, w: u8 },
    #[error("invalid matroid parity instance: {0}")]
    InvalidInstance(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{what} exceeds oracle size guard ({actual} > {limit})")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("target weight {k} out of range 0..={max}")]
    WeightOutOfRange { k: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
