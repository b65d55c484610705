//! Finite sums `c t^e (log t)^m` in `t = |x|^2`, enough to differentiate the
//! radial fundamental solutions symbolically.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::scalar::{rat_int, PiScalar, Rational};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialFn {
    /// `(exponent, log power) -> coefficient`, no zero coefficients.
    terms: BTreeMap<(Rational, u32), PiScalar>,
}

impl RadialFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: PiScalar, exp: Rational, log_pow: u32) -> Self {
        let mut f = Self::zero();
        f.add(exp, log_pow, c);
        f
    }

    fn add(&mut self, exp: Rational, log_pow: u32, c: PiScalar) {
        if c.is_zero() {
            return;
        }
        let key = (exp, log_pow);
        let slot = self.terms.entry(key.clone()).or_insert_with(PiScalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rational, u32), &PiScalar)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((e, m), c) in &other.terms {
            out.add(e.clone(), *m, -c);
        }
        out
    }

    pub fn scale(&self, s: &PiScalar) -> Self {
        let mut out = Self::zero();
        for ((e, m), c) in &self.terms {
            out.add(e.clone(), *m, c * s);
        }
        out
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for ((e, m), c) in &self.terms {
            let e1 = e - Rational::one();
            out.add(e1.clone(), *m, c.scale(e));
            if *m > 0 {
                out.add(e1, m - 1, c.scale(&rat_int(*m as i64)));
            }
        }
        out
    }

    fn shift(&self, by: i64) -> Self {
        let mut out = Self::zero();
        for ((e, m), c) in &self.terms {
            out.add(e + rat_int(by), *m, c.clone());
        }
        out
    }

    /// Laplacian of `f(|x|^2)` in `R^n`: `4 t f'' + 2 n f'`.
    pub fn laplacian(&self, n: u32) -> Self {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let mut out = d2.shift(1).scale(&PiScalar::from_int(4));
        for ((e, m), c) in d1.scale(&PiScalar::from_int(2 * n as i64)).terms {
            out.add(e, m, c);
        }
        out
    }

    /// Value at `t = 1`, where every log term vanishes.
    pub fn at_one(&self) -> PiScalar {
        let mut v = PiScalar::zero();
        for ((_, m), c) in &self.terms {
            if *m == 0 {
                v += c;
            }
        }
        v
    }

    /// Polynomial in `t`: no logs, nonnegative integer exponents.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|(e, m)| *m == 0 && e.is_integer() && !e.is_negative())
    }
}
