//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("Gram matrix is not symmetric")]
    NotSymmetric,

    #[error("bilinear form is degenerate (det = 0)")]
    DegenerateForm,

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("marked parameters must be pairwise distinct")]
    RepeatedParameter,

    #[error("zero vector does not define a projective point")]
    ZeroVector,

    #[error("marked point {index} does not lie on the quadric")]
    PointNotOnQuadric { index: usize },

    #[error("kernel formulas require corank 1 (odd size) or 2 (even size); matrix of size {size} has corank {corank}")]
    CorankPrecondition { size: usize, corank: usize },

    #[error("quadratic space has no designated rational base point for sampling")]
    NoBasePoint,

    #[error("genericity condition still failing after {attempts} resampling attempts")]
    GenericityExhausted { attempts: u32 },

    #[error("parameter list must have even length")]
    OddLength,

    #[error("operation not supported for del Pezzo degree {delta}")]
    UnsupportedDelta { delta: usize },

    #[error("class is not a root: need self-intersection -2 and orthogonality to the canonical class")]
    NotARoot,

    #[error("divisor classes live on surfaces of different degree")]
    DeltaMismatch,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
