use thiserror::Error;

/// Errors raised by the exact-arithmetic and cohomology routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("index set {0:?} is not a maximal cone")]
    NotACone(Vec<usize>),
    #[error("index set {0:?} is not a face of the fan")]
    NotAFace(Vec<usize>),
    #[error("linear form vanishes on a dual edge vector")]
    DegenerateDirection,
    #[error("base algebra has odd-degree classes")]
    OddClassesPresent,
    #[error("piecewise polynomials live on different characteristic pairs")]
    PairMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
