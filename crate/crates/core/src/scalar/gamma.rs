use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::pi::PiScalar;
use super::rational::{factorial, rat, rat_int, Rational};
use crate::error::{Error, Result};

/// `Gamma(x)` for `x` a positive integer or any half-odd-integer.
///
/// Integers give `(x-1)!`; half-odd-integers give a rational multiple of
/// `pi^(1/2)`. Non-positive integers are poles.
pub fn gamma_of(x: &Rational) -> Result<PiScalar> {
    let twice = x * rat_int(2);
    if !twice.is_integer() {
        return Err(Error::Unsupported(format!("Gamma({x}) is outside the half-integer lattice")));
    }
    let m = twice.to_integer();
    if m.is_even() {
        if !m.is_positive() {
            return Err(Error::IndexOutOfRange(format!("Gamma has a pole at {x}")));
        }
        let k = (m / 2u32).to_u64().ok_or_else(|| Error::IndexOutOfRange(x.to_string()))?;
        return Ok(PiScalar::from_rational(Rational::from_integer(factorial(k - 1))));
    }
    // Walk from 1/2 to x with Gamma(y + 1) = y Gamma(y).
    let half = rat(1, 2);
    let mut coeff = Rational::one();
    let mut y = half.clone();
    if x >= &half {
        while &y < x {
            coeff *= &y;
            y += Rational::one();
        }
    } else {
        while &y > x {
            y -= Rational::one();
            coeff /= &y;
        }
    }
    Ok(PiScalar::pi_pow(1).scale(&coeff))
}

/// `Gamma(m/2)` for `m >= 1`.
///
/// # Panics
/// If `m == 0` (pole).
pub fn gamma_half(m: u32) -> PiScalar {
    assert!(m >= 1, "Gamma(m/2) requires m >= 1");
    gamma_of(&rat(m as i64, 2)).expect("positive half-integer argument")
}

/// Multiplier constant of the degree-`j` higher order Riesz transform in
/// dimension `n`: `i^(-j) pi^(n/2) Gamma(j/2) / Gamma((n+j)/2)`, real for even `j`.
pub fn gamma_j(n: u32, j: u32) -> Result<PiScalar> {
    if j == 0 || j % 2 == 1 {
        return Err(Error::OddIndex(j as i64));
    }
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("dimension {n} < 2")));
    }
    let sign = if (j / 2).is_multiple_of(2) { 1 } else { -1 };
    let denom = gamma_half(n + j);
    let value = PiScalar::pi_pow(n as i32) * gamma_half(j);
    Ok(value.checked_div(&denom)?.scale(&rat_int(sign)))
}

/// `2^(k/2)` as an exact scalar.
pub fn pow2_half(k: i64) -> PiScalar {
    let (q, r) = k.div_mod_floor(&2);
    let base = if q >= 0 {
        Rational::from_integer(BigInt::from(2u32).pow(q as u32))
    } else {
        Rational::from_integer(BigInt::from(2u32).pow((-q) as u32)).recip()
    };
    let out = PiScalar::from_rational(base);
    if r == 1 {
        out * PiScalar::sqrt2()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_examples() {
        assert_eq!(gamma_half(2), PiScalar::from_int(1));
        assert_eq!(gamma_half(1), PiScalar::pi_pow(1));
        assert_eq!(gamma_half(5), PiScalar::pi_pow(1).scale(&rat(3, 4)));
        assert_eq!(gamma_half(8), PiScalar::from_int(6));
    }

    #[test]
    fn gamma_negative_half() {
        // Gamma(-1/2) = -2 sqrt(pi)
        assert_eq!(gamma_of(&rat(-1, 2)).unwrap(), PiScalar::pi_pow(1).scale(&rat(-2, 1)));
        assert!(gamma_of(&rat(0, 1)).is_err());
        assert!(gamma_of(&rat(-3, 1)).is_err());
        assert!(gamma_of(&rat(1, 3)).is_err());
    }

    #[test]
    fn gamma_j_examples() {
        assert_eq!(gamma_j(2, 2).unwrap(), -PiScalar::pi());
        assert_eq!(gamma_j(2, 4).unwrap(), PiScalar::pi().scale(&rat(1, 2)));
        assert_eq!(gamma_j(3, 2).unwrap(), PiScalar::pi().scale(&rat(-4, 3)));
        assert_eq!(gamma_j(2, 3), Err(Error::OddIndex(3)));
    }

    #[test]
    fn pow2_half_values() {
        assert_eq!(pow2_half(4), PiScalar::from_int(4));
        assert_eq!(pow2_half(3), PiScalar::sqrt2().scale(&rat(2, 1)));
        assert_eq!(pow2_half(-1), PiScalar::sqrt2().scale(&rat(1, 2)));
        assert_eq!(pow2_half(-2), PiScalar::from_rational(rat(1, 2)));
    }
}
