//! Sparse homogeneous polynomials in `n` variables over a [`Coeff`] ring.

mod division;
mod json;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Coeff, Rational};

pub use division::MonomialOrder;
pub use json::{PolyJson, TermJson};

/// Exponent vector. Derived ordering is lexicographic with `x1` most
/// significant, which is graded-lex among monomials of equal degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in ascending
/// lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Homogeneous polynomial: every stored monomial has total degree `degree`
/// and no stored coefficient is zero.
#[derive(Clone, PartialEq)]
pub struct HPoly<C> {
    n_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> HPoly<C> {
    pub fn zero(n_vars: usize, degree: u32) -> Self {
        HPoly { n_vars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: C) -> Self {
        let mut p = Self::zero(n_vars, 0);
        p.add_term(Monomial(vec![0; n_vars]), c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, C::one())
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        let mut p = Self::zero(n_vars, 1);
        p.add_term(Monomial(e), C::one());
        p
    }

    /// Single term `c * x^exps`.
    pub fn monomial(exps: Vec<u32>, c: C) -> Self {
        let d = exps.iter().sum();
        let mut p = Self::zero(exps.len(), d);
        p.add_term(Monomial(exps), c);
        p
    }

    /// `|x|^(2k) = (x1^2 + ... + xn^2)^k`.
    pub fn radial(n_vars: usize, k: u32) -> Self {
        let mut sq = Self::zero(n_vars, 2);
        for i in 0..n_vars {
            let mut e = vec![0; n_vars];
            e[i] = 2;
            sq.add_term(Monomial(e), C::one());
        }
        sq.pow(k)
    }

    /// Build from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(n_vars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(n_vars, degree);
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::DimensionMismatch(n_vars, e.len()));
            }
            let d: u32 = e.iter().sum();
            if d != degree {
                return Err(Error::DegreeMismatch(degree, d));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer-coefficient terms; the degree is
    /// taken from the first term (zero polynomial of degree 0 if empty).
    pub fn from_int_terms(n_vars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        let degree = terms.first().map(|(e, _)| e.iter().sum()).unwrap_or(0);
        Self::from_terms(n_vars, degree, terms.iter().map(|(e, c)| (e.to_vec(), C::from_i64(*c))))
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = Self::zero(self.n_vars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.n_vars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n_vars);
        for _ in 0..k {
            out = out.checked_mul(self).expect("same dimension");
        }
        out
    }

    /// Coefficient-wise map into another ring; zero images are dropped.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HPoly<D> {
        let mut out = HPoly::zero(self.n_vars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.0.clone();
            ex[i] -= 1;
            out.add_term(Monomial(ex), c.clone() * C::from_i64(e as i64));
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.n_vars, self.degree.saturating_sub(2));
        if self.degree < 2 {
            return out;
        }
        for (m, c) in &self.terms {
            for i in 0..self.n_vars {
                let e = m.0[i];
                if e < 2 {
                    continue;
                }
                let mut ex = m.0.clone();
                ex[i] -= 2;
                out.add_term(Monomial(ex), c.clone() * C::from_i64((e * (e - 1)) as i64));
            }
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// `p(d) q`: the constant-coefficient operator with symbol `self`
    /// applied to `q`.
    pub fn apply_diff(&self, q: &Self) -> Result<Self> {
        self.check_dims(q)?;
        if self.degree > q.degree {
            return Ok(Self::zero(self.n_vars, 0));
        }
        let mut out = Self::zero(self.n_vars, q.degree - self.degree);
        for (mp, cp) in &self.terms {
            for (mq, cq) in &q.terms {
                if !mp.divides(mq) {
                    continue;
                }
                // d^a x^b = b!/(b-a)! x^(b-a)
                let mut factor = BigInt::one();
                for (&a, &b) in mp.0.iter().zip(&mq.0) {
                    for t in 0..a {
                        factor *= b - t;
                    }
                }
                let c = cp.clone() * cq.clone() * C::from_rational(&Rational::from_integer(factor));
                out.add_term(mq.div(mp), c);
            }
        }
        Ok(out)
    }

    /// Integral over the unit sphere against the normalized surface measure.
    pub fn sphere_integral(&self) -> C {
        let n = self.n_vars as i64;
        let mut total = C::zero();
        for (m, c) in &self.terms {
            if m.0.iter().any(|e| e % 2 == 1) {
                continue;
            }
            let mut num = Rational::one();
            for &e in &m.0 {
                // (e-1)!!
                let mut k = e as i64 - 1;
                while k > 1 {
                    num *= rat_int(k);
                    k -= 2;
                }
            }
            let half = m.degree() as i64 / 2;
            let mut den = Rational::one();
            for k in 0..half {
                den *= rat_int(n + 2 * k);
            }
            total = total + c.clone() * C::from_rational(&(num / den));
        }
        total
    }

    /// Evaluate at a point with coordinates in the coefficient ring.
    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch(self.n_vars, point.len()));
        }
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v = v * x.clone();
                }
            }
            total = total + v;
        }
        Ok(total)
    }

    pub fn evaluate_exact(&self, point: &[Rational]) -> Result<C> {
        let pt: Vec<C> = point.iter().map(C::from_rational).collect();
        self.evaluate(&pt)
    }

    pub fn evaluate_float(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch(self.n_vars, point.len()));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(c.to_f64(), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Sum of (bounds on) absolute coefficients: dominates `sup |p|` on the
    /// unit sphere since every monomial is bounded by 1 there.
    pub fn coeff_norm(&self) -> Rational {
        self.terms.values().map(|c| c.abs_bound()).sum()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }
}

impl<C: Coeff> fmt::Debug for HPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly[n={}, d={}]({})", self.n_vars, self.degree, self)
    }
}

impl<C: Coeff> fmt::Display for HPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", v + 1)?,
                    _ => write!(f, "*x{}^{}", v + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
