use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VarIndexOutOfRange { index: usize, arity: usize },
    #[error("a polynomial map needs at least one variable")]
    EmptyMap,
    #[error("all components of the map are zero")]
    ZeroMap,
    #[error("map has degree {0}; at least 1 is required")]
    DegenerateMap(u32),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("determinant is not the given nonzero constant")]
    DeterminantMismatch,
    #[error("jacobian determinant is not a nonzero constant")]
    JacobianNotUnit,
    #[error("series order/arity mismatch")]
    SeriesMismatch,
    #[error("affine step matrix is singular")]
    SingularAffine,
    #[error("triangular step on X{target} must not involve its own variable")]
    InvalidTriangular { target: usize },
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("order must be at least 1")]
    ZeroOrder,
}
