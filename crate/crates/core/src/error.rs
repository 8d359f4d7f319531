//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at column {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("exponent at column {pos} must be an integer literal")]
    NonIntegerExponent { pos: usize },

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("row matrix does not generate a saturated sublattice")]
    NotSaturated,

    #[error("dimension mismatch in matrix operation")]
    MatrixShape,

    #[error("empty support: a Newton polytope needs at least one point")]
    EmptySupport,

    #[error("ambient dimension {dim} exceeds the supported maximum {max}")]
    DimensionCap { dim: usize, max: usize },

    #[error("direction vector must be nonzero")]
    ZeroDirection,

    #[error("face does not belong to the Newton polytope of this polynomial")]
    FaceMismatch,

    #[error("negative power of a non-monomial is not a Laurent polynomial")]
    NegativePower,

    #[error("zero raised to a nonpositive power")]
    ZeroPower,

    #[error("point {point} is not a vertex of the Newton polytope")]
    NotAVertex { point: String },

    #[error("coefficient box is empty")]
    EmptyBox,

    #[error("too few nonzero coefficients: need at least {needed}, found {found}")]
    TooFewCoefficients { needed: usize, found: usize },

    #[error("S-pair cap of {cap} exceeded; instance too large")]
    SPairCapExceeded { cap: usize },

    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),

    #[error("invalid problem file: {0}")]
    InvalidProblem(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
