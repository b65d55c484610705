use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, parse_rational, rat, rat_int, Rational};
use super::Coeff;
use crate::error::{Error, Result};

/// A basis element `pi^(half_exp/2) * sqrt(2)^root2`.
///
/// The `sqrt(2)` factor only shows up for odd dimension, through
/// `2^(n/2)` in Bessel-series constants and their sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PiPower {
    pub half_exp: i32,
    pub root2: bool,
}

impl PiPower {
    pub const ONE: PiPower = PiPower { half_exp: 0, root2: false };

    pub fn pi_half(half_exp: i32) -> Self {
        PiPower { half_exp, root2: false }
    }

    /// Product of two basis elements as `(rational factor, basis element)`.
    fn mul(self, other: PiPower) -> (i64, PiPower) {
        let factor = if self.root2 && other.root2 { 2 } else { 1 };
        (
            factor,
            PiPower { half_exp: self.half_exp + other.half_exp, root2: self.root2 ^ other.root2 },
        )
    }

    fn to_f64(self) -> f64 {
        let mut v = std::f64::consts::PI.powf(self.half_exp as f64 / 2.0);
        if self.root2 {
            v *= std::f64::consts::SQRT_2;
        }
        v
    }

    fn abs_bound(self) -> Rational {
        // sqrt(pi) < 1.7725, 1/sqrt(pi) < 0.5642, sqrt(2) < 1.4143
        let base = if self.half_exp >= 0 { rat(17725, 10000) } else { rat(5642, 10000) };
        let mut b = num_traits::pow(base, self.half_exp.unsigned_abs() as usize);
        if self.root2 {
            b *= rat(14143, 10000);
        }
        b
    }
}

/// Finite rational combination of `pi^(k/2)` (and `sqrt(2)` times those).
///
/// Canonical form: no zero coefficients are stored, so structural equality
/// is exact equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiScalar {
    terms: BTreeMap<PiPower, Rational>,
}

impl PiScalar {
    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(r, PiPower::ONE)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(rat_int(v))
    }

    pub fn monomial(coeff: Rational, power: PiPower) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(power, coeff);
        }
        PiScalar { terms }
    }

    /// `pi^(half_exp/2)`.
    pub fn pi_pow(half_exp: i32) -> Self {
        Self::monomial(Rational::one(), PiPower::pi_half(half_exp))
    }

    pub fn pi() -> Self {
        Self::pi_pow(2)
    }

    pub fn sqrt2() -> Self {
        Self::monomial(Rational::one(), PiPower { half_exp: 0, root2: true })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PiPower, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational, if it carries no pi or sqrt(2) factor.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&PiPower::ONE).cloned(),
            _ => None,
        }
    }

    /// `(coefficient, basis element)` for a single-term value.
    pub fn as_monomial(&self) -> Option<(Rational, PiPower)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(p, c)| (c.clone(), *p))
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        PiScalar { terms: self.terms.iter().map(|(p, c)| (*p, c * r)).collect() }
    }

    /// Reciprocal of a single-term value. Multi-term values are not units
    /// of this ring and give `Ok(None)`.
    pub fn try_invert(&self) -> Result<Option<PiScalar>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some((c, p)) = self.as_monomial() else {
            return Ok(None);
        };
        // 1/sqrt(2) = sqrt(2)/2
        let c = if p.root2 { c * rat_int(2) } else { c };
        Ok(Some(Self::monomial(c.recip(), PiPower { half_exp: -p.half_exp, root2: p.root2 })))
    }

    /// Exact quotient by a single-term divisor.
    pub fn checked_div(&self, d: &PiScalar) -> Result<PiScalar> {
        match d.try_invert()? {
            Some(inv) => Ok(self * &inv),
            None => Err(Error::NonInvertibleLeading(d.to_string())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| ToPrimitive::to_f64(c).unwrap_or(f64::NAN) * p.to_f64())
            .sum()
    }

    /// Sign of a value, exact when it has a single term.
    pub fn signum_exact(&self) -> Option<i32> {
        if self.is_zero() {
            return Some(0);
        }
        self.as_monomial().map(|(c, _)| if c.is_positive() { 1 } else { -1 })
    }

    fn add_term(&mut self, p: PiPower, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }
}

impl Zero for PiScalar {
    fn zero() -> Self {
        PiScalar { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PiScalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for PiScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for PiScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar { terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect() }
    }
}

impl Neg for &PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        -self.clone()
    }
}

impl AddAssign<&PiScalar> for PiScalar {
    fn add_assign(&mut self, rhs: &PiScalar) {
        for (p, c) in &rhs.terms {
            self.add_term(*p, c.clone());
        }
    }
}

impl SubAssign<&PiScalar> for PiScalar {
    fn sub_assign(&mut self, rhs: &PiScalar) {
        for (p, c) in &rhs.terms {
            self.add_term(*p, -c.clone());
        }
    }
}

impl AddAssign for PiScalar {
    fn add_assign(&mut self, rhs: PiScalar) {
        *self += &rhs;
    }
}

impl SubAssign for PiScalar {
    fn sub_assign(&mut self, rhs: PiScalar) {
        *self -= &rhs;
    }
}

impl Mul<&PiScalar> for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        let mut out = PiScalar::zero();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &rhs.terms {
                let (f, p) = pa.mul(*pb);
                out.add_term(p, ca * cb * rat_int(f));
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<PiScalar> for PiScalar {
            type Output = PiScalar;
            fn $method(mut self, rhs: PiScalar) -> PiScalar {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&PiScalar> for PiScalar {
            type Output = PiScalar;
            fn $method(mut self, rhs: &PiScalar) -> PiScalar {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<&PiScalar> for &PiScalar {
            type Output = PiScalar;
            fn $method(self, rhs: &PiScalar) -> PiScalar {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<PiScalar> for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: PiScalar) -> PiScalar {
        &self * &rhs
    }
}

impl Mul<&PiScalar> for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        &self * rhs
    }
}

impl Coeff for PiScalar {
    fn from_rational(r: &Rational) -> Self {
        PiScalar::from_rational(r.clone())
    }

    fn try_recip(&self) -> Option<Self> {
        self.try_invert().ok().flatten()
    }

    fn to_f64(&self) -> f64 {
        PiScalar::to_f64(self)
    }

    fn abs_bound(&self) -> Rational {
        self.terms.iter().map(|(p, c)| c.abs() * p.abs_bound()).sum()
    }
}

/// Terms are written as `(p/q)*pi^(k/2)`, optionally followed by `*2^(1/2)`;
/// a term without pi or sqrt(2) is just `p/q`. Zero prints as `0`.
impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = format_rational(&c.abs());
            if *p == PiPower::ONE {
                f.write_str(&mag)?;
                continue;
            }
            write!(f, "({mag})")?;
            if p.half_exp != 0 {
                write!(f, "*pi^({}/2)", p.half_exp)?;
            }
            if p.root2 {
                f.write_str("*2^(1/2)")?;
            }
        }
        Ok(())
    }
}

impl FromStr for PiScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut out = PiScalar::zero();
        for (sign, term) in split_terms(&compact)? {
            let mut value = parse_term(term)?;
            if sign < 0 {
                value = -value;
            }
            out += value;
        }
        Ok(out)
    }
}

/// Split at top-level `+`/`-`, keeping the sign of each term.
fn split_terms(s: &str) -> Result<Vec<(i32, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut sign = 1i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                // a sign right after `^` or `*` belongs to the factor
                let prev = if i == 0 { None } else { Some(bytes[i - 1]) };
                if matches!(prev, Some(b'^') | Some(b'*') | Some(b'/')) {
                    continue;
                }
                if i > start {
                    out.push((sign, &s[start..i]));
                } else if i != 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                sign = if b == b'-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
    }
    if depth != 0 || start >= bytes.len() {
        return Err(Error::Parse(format!("malformed scalar {s:?}")));
    }
    out.push((sign, &s[start..]));
    Ok(out)
}

fn parse_term(term: &str) -> Result<PiScalar> {
    let mut coeff = Rational::one();
    let mut power = PiPower::ONE;
    let mut extra = PiScalar::one();
    for factor in split_factors(term) {
        if factor == "pi" {
            power.half_exp += 2;
        } else if let Some(rest) = factor.strip_prefix("pi^") {
            power.half_exp += parse_pi_exponent(rest)?;
        } else if factor == "sqrt2" || factor == "2^(1/2)" {
            extra = extra * PiScalar::sqrt2();
        } else {
            coeff *= parse_rational(factor)?;
        }
    }
    Ok(PiScalar::monomial(coeff, power) * extra)
}

fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, b) in term.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

/// Exponent of pi as a count of halves: `(k/2)` gives k, `k` or `(k)` gives 2k.
fn parse_pi_exponent(s: &str) -> Result<i32> {
    let e = parse_rational(s)?;
    let twice = e * rat_int(2);
    if !twice.is_integer() {
        return Err(Error::Parse(format!("pi exponent {s:?} is not a half-integer")));
    }
    twice
        .to_integer()
        .to_i32()
        .ok_or_else(|| Error::Parse(format!("pi exponent {s:?} out of range")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn ring_examples() {
        let pi = PiScalar::pi();
        let three_pi = (pi.clone() + pi.clone() * PiScalar::from_int(2)) * PiScalar::one();
        assert_eq!(three_pi, PiScalar::pi().scale(&rat(3, 1)));

        let inv = (-PiScalar::pi()).try_invert().unwrap().unwrap();
        assert_eq!(inv, PiScalar::monomial(rat(-1, 1), PiPower::pi_half(-2)));

        let one_plus_pi = PiScalar::one() + PiScalar::pi();
        assert_eq!(one_plus_pi.try_invert().unwrap(), None);
        assert_eq!(PiScalar::zero().try_invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let r = PiScalar::sqrt2() * PiScalar::sqrt2();
        assert_eq!(r, PiScalar::from_int(2));
        let inv = PiScalar::sqrt2().try_invert().unwrap().unwrap();
        assert_eq!(inv * PiScalar::sqrt2(), PiScalar::one());
    }

    #[test]
    fn text_round_trip() {
        let x = PiScalar::pi_pow(1).scale(&rat(-3, 4)) + PiScalar::from_int(2)
            - PiScalar::pi_pow(-2).scale(&rat(1, 7))
            + PiScalar::sqrt2() * PiScalar::pi();
        let text = x.to_string();
        assert_eq!(text.parse::<PiScalar>().unwrap(), x);
        assert_eq!("0".parse::<PiScalar>().unwrap(), PiScalar::zero());
        assert_eq!("-pi".parse::<PiScalar>().unwrap(), -PiScalar::pi());
        assert_eq!("(1/2)*pi^(-2/2)".parse::<PiScalar>().unwrap(), PiScalar::pi_pow(-2).scale(&rat(1, 2)));
        assert_eq!("3*pi^1".parse::<PiScalar>().unwrap(), PiScalar::pi().scale(&rat(3, 1)));
        assert!("pi^(1/3)".parse::<PiScalar>().is_err());
        assert!("1 +".parse::<PiScalar>().is_err());
    }

    #[test]
    fn display_form() {
        assert_eq!((-PiScalar::pi()).to_string(), "-(1)*pi^(2/2)");
        assert_eq!(PiScalar::from_rational(rat(5, 3)).to_string(), "5/3");
        assert_eq!(PiScalar::pi_pow(1).scale(&rat(3, 4)).to_string(), "(3/4)*pi^(1/2)");
    }

    #[test]
    fn abs_bound_dominates() {
        let x = PiScalar::pi_pow(3).scale(&rat(-5, 2)) + PiScalar::pi_pow(-1) + PiScalar::sqrt2();
        let b = Coeff::abs_bound(&x);
        assert!(ToPrimitive::to_f64(&b).unwrap() >= x.to_f64().abs());
    }
}
