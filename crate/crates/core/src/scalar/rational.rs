use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Falling factorial `a (a-1) ... (a-k+1)`; equals 1 for `k = 0`.
pub fn falling(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x -= Rational::one();
    }
    acc
}

/// Generalized binomial `a (a-1) ... (a-k+1) / k!` for rational `a`.
/// Zero for negative `k`.
pub fn binom(a: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    falling(a, k as u64) / Rational::from_integer(factorial(k as u64))
}

pub fn binom_int(a: i64, k: i64) -> Rational {
    binom(&rat_int(a), k)
}

/// Parse `"p/q"` or `"p"` (surrounding parentheses and whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let mut t = s.trim();
    while t.starts_with('(') && t.ends_with(')') {
        t = t[1..t.len() - 1].trim();
    }
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

/// Canonical text: `"p"` for integers, `"p/q"` otherwise, with `q > 0`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_generalized() {
        assert_eq!(binom(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binom_int(5, 2), rat_int(10));
        assert_eq!(binom_int(3, -1), rat_int(0));
        assert_eq!(binom_int(-2, 3), rat_int(-4));
        assert_eq!(binom_int(2, 5), rat_int(0));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" (7) ").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }
}
