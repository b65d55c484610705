//! Exact machinery for deciding when a higher-order Calderón–Zygmund operator
//! is controlled by a power of the Laplacian, plus floating-point probes.

pub mod constants;
pub mod criterion;
pub mod error;
pub mod harmonic;
pub mod identities;
pub mod linalg;
pub mod poly;
pub mod probe;
pub mod scalar;

pub use error::{Error, Result};
pub use harmonic::{decompose, expansion_from_numerator, HarmonicExpansion};
pub use poly::{HPoly, Monomial, MonomialOrder};
pub use scalar::{Coeff, PiPower, PiScalar, Rational};

/// Polynomials with exact `Q[pi^(1/2), 2^(1/2)]` coefficients.
pub type Poly = HPoly<PiScalar>;
/// Polynomials with rational coefficients.
pub type RatPoly = HPoly<Rational>;
/// Floating-point polynomials, for fast evaluation.
pub type FloatPoly = HPoly<f64>;
