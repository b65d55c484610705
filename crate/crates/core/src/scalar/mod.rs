//! Scalar tower: rationals, the graded ring of half-integer powers of pi, and
//! the [`Coeff`] trait that lets polynomial code run over any of them (or over
//! plain floats).

mod gamma;
mod pi;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

pub use gamma::{gamma_half, gamma_j, gamma_of, pow2_half};
pub use pi::{PiPower, PiScalar};
pub use rational::{
    binom, binom_int, factorial, falling, format_rational, parse_rational, rat, rat_int,
    Rational,
};

/// Coefficient ring for polynomials.
///
/// Implemented for exact scalars ([`Rational`], [`PiScalar`]) and for `f32`/`f64`.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&rat_int(v))
    }

    /// Multiplicative inverse when it exists in the ring.
    fn try_recip(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// A rational upper bound on `|self|`.
    fn abs_bound(&self) -> Rational;

    /// Whether `self` is round-off relative to a magnitude `scale`.
    /// Exact rings only treat true zero as negligible.
    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

impl Coeff for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_bound(&self) -> Rational {
        num_traits::Signed::abs(self)
    }
}

macro_rules! float_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            fn from_rational(r: &Rational) -> Self {
                ToPrimitive::to_f64(r).unwrap_or(f64::NAN) as $t
            }

            fn try_recip(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / *self)
                }
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn abs_bound(&self) -> Rational {
                Rational::from_float(self.abs()).unwrap_or_else(Rational::zero)
            }

            fn is_negligible(&self, scale: f64) -> bool {
                (self.abs() as f64) <= scale * 64.0 * (<$t>::EPSILON as f64)
            }
        }
    };
}

float_coeff!(f64);
float_coeff!(f32);
