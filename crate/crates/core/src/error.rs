use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("divisor class is not pseudo-effective")]
    NotPseudoEffective,
    #[error("divisor class is not big")]
    NotBig,
    #[error("model inconsistent with the generator axiom: {0}")]
    ModelInconsistent(String),
    #[error("curve {0} lies in the augmented base locus")]
    CurveInAugmentedLocus(String),
    #[error("section spaces on the complement are not finite-dimensional")]
    NotFinite,
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("invalid boundary divisor: {0}")]
    InvalidBoundary(String),
    #[error("invalid surface model: {0}")]
    InvalidModel(String),
    #[error("ray {index} = ({x}, {y}) is not primitive")]
    NonPrimitiveRay { index: usize, x: i64, y: i64 },
    #[error("fan is not complete: {0}")]
    NotComplete(String),
    #[error("fan is not smooth: rays {first} and {second} have determinant {det}")]
    NotSmooth { first: usize, second: usize, det: i64 },
    #[error("invalid toric divisor: {0}")]
    InvalidDivisor(String),
    #[error("scan at m = {m} neither stabilized nor strictly increasing at k = {k_cap}")]
    CapExceededInconclusive { m: u32, k_cap: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
