use thiserror::Error;

/// Errors raised across the crate. Verdicts and reports are values, not errors;
/// these variants cover contract violations and malformed input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gamma_j is only defined here for even positive j, got {0}")]
    OddIndex(i64),
    #[error("polynomial degrees differ: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("ambient dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("leading coefficient {0} of the divisor is not invertible in the scalar ring")]
    NonInvertibleLeading(String),
    #[error("kernel has a nonzero constant spherical component (mean of Omega is not zero)")]
    CancellationViolation,
    #[error("kernel has a nonzero odd component of degree {0}")]
    OddComponent(u32),
    #[error("harmonic expansion is invalid: {0}")]
    InvalidExpansion(String),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("quadrature under-resolved: estimated error {estimate:e} exceeds {tolerance:e}")]
    QuadratureUnderResolved { estimate: f64, tolerance: f64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("multiplier coefficients mix several powers of pi; cannot reduce to a rational form")]
    MixedPiGrades,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
