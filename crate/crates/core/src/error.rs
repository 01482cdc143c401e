use thiserror::Error;

/// Errors raised by the algebra, blade and angle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ambient dimension {0} outside supported range 1..=14")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("grade {grade} out of range for dimension {dim}")]
    GradeOutOfRange { grade: usize, dim: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("multivector is not homogeneous")]
    NotHomogeneous,
    #[error("multivector is not a blade (residual {residual:e})")]
    NotABlade { residual: f64 },
    #[error("frame is rank deficient at vector {index}")]
    RankDeficient { index: usize },
    #[error("frame is not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("blade must be nonzero")]
    ZeroBlade,
    #[error("blade must have unit norm (norm {norm})")]
    NotUnitBlade { norm: f64 },
    #[error("grades differ: {p} vs {q}")]
    GradeMismatch { p: usize, q: usize },
    #[error("power series did not converge within {terms} terms")]
    Nonconvergence { terms: usize },
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("blade does not span the source subspace")]
    SubspaceMismatch,
    #[error("bases are not principal bases: {0}")]
    NotPrincipal(String),
    #[error("no plane available to rotate through a straight angle")]
    NoRotationPlane,
    #[error("malformed product: {0}")]
    MalformedProduct(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
