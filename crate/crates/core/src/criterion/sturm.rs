//! Univariate rational polynomials and Sturm sequences.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};
use crate::RatPoly;

/// Dense univariate polynomial, coefficients in ascending order, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect(),
        )
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        let inv = d.lead().recip();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() * &inv;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            q[shift] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// Same roots, all simple.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Scaled to coprime integer coefficients.
    pub fn primitive(&self) -> Vec<num_bigint::BigInt> {
        let l = self.0.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<_> = self.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    fn root_bound(&self) -> Rational {
        let lead = self.lead().abs();
        let m = self.0.iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }
}

fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sturm_sequence(f: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[UPoly], x: &Rational) -> usize {
    variations(seq.iter().map(|p| sign(&p.eval(x))))
}

fn variations_at_infinity(seq: &[UPoly], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = sign(p.lead());
        if positive || p.degree().unwrap_or(0) % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(f: &UPoly) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Disjoint intervals `(lo, hi)` with rational endpoints that are not roots,
/// each holding exactly one distinct real root, in increasing order.
pub fn isolate_roots(f: &UPoly) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let seq = sturm_sequence(f);
    let b = f.root_bound();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let k = variations_at(&seq, &lo) - variations_at(&seq, &hi);
        match k {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = split_point(f, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A point strictly inside `(lo, hi)` that is not a root of `f`, as close to
/// the midpoint as the dyadic grid allows.
fn split_point(f: &UPoly, lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    let mut d = 2i64;
    loop {
        // finitely many roots, so some grid point works
        for i in 1..d {
            let m = lo + &w * rat(i, d);
            if !f.eval(&m).is_zero() {
                return m;
            }
        }
        d *= 2;
    }
}

/// Shrink an isolating interval (endpoints non-roots) until narrower than `width`.
pub fn refine(f: &UPoly, lo: &Rational, hi: &Rational, width: &Rational) -> (Rational, Rational) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let seq = sturm_sequence(f);
    while &(&hi - &lo) >= width {
        let mid = split_point(f, &lo, &hi);
        let left = variations_at(&seq, &lo) - variations_at(&seq, &mid);
        if left >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Restriction `w(1, t)` of a binary form.
pub fn dehomogenize(w: &RatPoly) -> Result<UPoly> {
    if w.n_vars() != 2 {
        return Err(Error::DimensionMismatch(2, w.n_vars()));
    }
    let d = w.degree() as usize;
    let mut c = vec![Rational::zero(); d + 1];
    for (m, v) in w.terms() {
        c[m.exps()[1] as usize] = v.clone();
    }
    Ok(UPoly::new(c))
}

/// Exact number of zeros of the even-degree binary form `w` on the unit circle.
pub fn sturm_circle_zero_count(w: &RatPoly) -> Result<u64> {
    if w.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = dehomogenize(w)?;
    let at_pole = w.coeff(&[0, w.degree()]).is_zero();
    Ok(2 * count_real_roots(&f) as u64 + if at_pole { 2 } else { 0 })
}

/// A zero of a binary form on the unit circle, up to sign: `(0, 1)`, the
/// line through `(1, t)` with `t` rational, or an isolating interval for an
/// irrational `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum CircleZero {
    Pole,
    Rational(Rational),
    Enclosure { lo: Rational, hi: Rational },
}

impl CircleZero {
    /// Unit vector, with `t` at the interval midpoint for enclosures.
    pub fn unit_f64(&self) -> [f64; 2] {
        use num_traits::ToPrimitive;
        let t = match self {
            CircleZero::Pole => return [0.0, 1.0],
            CircleZero::Rational(t) => t.to_f64().unwrap_or(f64::NAN),
            CircleZero::Enclosure { lo, hi } => ((lo + hi) / rat(2, 1)).to_f64().unwrap_or(f64::NAN),
        };
        let r = (1.0 + t * t).sqrt();
        [1.0 / r, t / r]
    }
}

/// Number of distinct roots in `(lo, hi]`.
pub fn count_roots_in(f: &UPoly, lo: &Rational, hi: &Rational) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    variations_at(&seq, lo) - variations_at(&seq, hi)
}

/// Every zero of `w` on the circle (one per antipodal pair), rational ones
/// found exactly by the rational root test.
pub fn circle_zeros(w: &RatPoly) -> Result<Vec<CircleZero>> {
    if w.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if w.coeff(&[0, w.degree()]).is_zero() {
        out.push(CircleZero::Pole);
    }
    let f = dehomogenize(w)?.squarefree();
    let ints = f.primitive();
    let lead = ints.last().cloned().unwrap_or_default();
    // rational roots p/q need q | lead; skip the search when lead is too large to factor
    let divisors: Vec<u64> = match num_traits::ToPrimitive::to_u64(&lead.abs()) {
        Some(l) if l <= 1_000_000_000_000 => {
            (1..).take_while(|d| d * d <= l).filter(|d| l % d == 0).flat_map(|d| [d, l / d]).collect()
        }
        _ => Vec::new(),
    };
    'roots: for (lo, hi) in isolate_roots(&f) {
        for &q in &divisors {
            let qr = Rational::from_integer(q.into());
            let (a, b) = refine(&f, &lo, &hi, &qr.recip());
            let mut p = (&a * &qr).ceil();
            let hi_p = (&b * &qr).floor();
            while p <= hi_p {
                let t = &p / &qr;
                if f.eval(&t).is_zero() {
                    out.push(CircleZero::Rational(t));
                    continue 'roots;
                }
                p += Rational::one();
            }
        }
        out.push(CircleZero::Enclosure { lo, hi });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| rat_int(v)).collect())
    }

    fn w(terms: &[(&[u32], i64)]) -> RatPoly {
        RatPoly::from_int_terms(2, terms).unwrap()
    }

    #[test]
    fn counts_roots() {
        assert_eq!(count_real_roots(&up(&[-2, 0, 1])), 2);
        assert_eq!(count_real_roots(&up(&[1, 0, 1])), 0);
        // (t-1)^2 (t+3): two distinct roots
        assert_eq!(count_real_roots(&up(&[3, -5, 1, 1])), 2);
        assert_eq!(count_real_roots(&up(&[5])), 0);
    }

    #[test]
    fn isolates_roots() {
        let f = up(&[0, -2, 0, 1]); // t(t^2 - 2)
        let iv = isolate_roots(&f);
        assert_eq!(iv.len(), 3);
        for (lo, hi) in &iv {
            assert!(lo < hi);
        }
        let (lo, hi) = refine(&f, &iv[2].0, &iv[2].1, &rat(1, 1000));
        assert!(lo < rat(1415, 1000) && hi > rat(1414, 1000));
    }

    #[test]
    fn circle_counts() {
        assert_eq!(sturm_circle_zero_count(&w(&[(&[2, 0], 1), (&[0, 2], 1)])).unwrap(), 0);
        assert_eq!(sturm_circle_zero_count(&w(&[(&[1, 1], 1)])).unwrap(), 4);
        assert_eq!(sturm_circle_zero_count(&w(&[(&[0, 2], 1)])).unwrap(), 2);
        assert_eq!(sturm_circle_zero_count(&RatPoly::zero(2, 2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_part() {
        let f = up(&[3, -5, 1, 1]);
        assert_eq!(f.squarefree().degree(), Some(2));
        assert_eq!(f.primitive().len(), 4);
    }
}
