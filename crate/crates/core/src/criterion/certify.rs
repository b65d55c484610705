//! Zero witnesses and certified lower bounds for an even form on the sphere.
//!
//! Homogeneity of even degree means `W` has the same sign along a ray and
//! vanishes on a ray iff it vanishes on the corresponding sphere point, so we
//! work on rays and on the surface of the cube `[-1, 1]^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::scalar::{format_rational, rat, Rational};
use crate::RatPoly;

/// Evidence that `W` vanishes somewhere on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroWitness {
    /// Exact zero at a rational point of the unit sphere.
    Point(Vec<Rational>),
    /// Exact zero along an integer direction whose length is irrational.
    Ray(Vec<Rational>),
    /// `W` has opposite signs along these two directions; the sphere is
    /// connected, so `W` vanishes in between.
    SignChange(Vec<Rational>, Vec<Rational>),
    /// Plane only: `W(1, t)` has a root with `lo < t < hi` (Sturm count).
    Interval { lo: Rational, hi: Rational },
}

fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(format_rational(c))).collect())
}

impl ZeroWitness {
    pub fn to_json(&self) -> Value {
        match self {
            ZeroWitness::Point(p) => json!({"kind": "point", "point": vec_json(p)}),
            ZeroWitness::Ray(r) => json!({"kind": "ray", "direction": vec_json(r)}),
            ZeroWitness::SignChange(a, b) => {
                json!({"kind": "sign_change", "positive_or_first": vec_json(a), "second": vec_json(b)})
            }
            ZeroWitness::Interval { lo, hi } => {
                json!({"kind": "interval", "t_lo": format_rational(lo), "t_hi": format_rational(hi)})
            }
        }
    }

    /// A point or direction representing the witness (midpoint direction for
    /// the non-exact kinds).
    pub fn direction(&self) -> Vec<Rational> {
        match self {
            ZeroWitness::Point(p) | ZeroWitness::Ray(p) => p.clone(),
            ZeroWitness::SignChange(a, _) => a.clone(),
            ZeroWitness::Interval { lo, hi } => vec![Rational::one(), (lo + hi) / rat(2, 1)],
        }
    }
}

/// Scale a nonzero rational direction to a primitive integer vector with a
/// positive first nonzero entry (W is even, so the sign is immaterial).
pub(crate) fn primitive_ray(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let flip = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    ints.into_iter()
        .map(|c| {
            let c = if g.is_zero() { c } else { c / &g };
            if flip {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Exact zero along `v`: a sphere point if `|v|` is rational, else the ray.
pub(crate) fn zero_witness(v: &[Rational]) -> ZeroWitness {
    let ints = primitive_ray(v);
    let norm2: BigInt = ints.iter().map(|c| c * c).sum();
    let root = norm2.sqrt();
    if &root * &root == norm2 {
        ZeroWitness::Point(ints.into_iter().map(|c| Rational::new(c, root.clone())).collect())
    } else {
        ZeroWitness::Ray(ints.into_iter().map(Rational::from_integer).collect())
    }
}

/// Among exact zeros prefer sphere points, then the lexicographically least.
pub(crate) fn least_zero(cands: impl IntoIterator<Item = ZeroWitness>) -> Option<ZeroWitness> {
    cands.into_iter().min_by(|a, b| {
        let key = |w: &ZeroWitness| match w {
            ZeroWitness::Point(p) => (0, p.clone()),
            ZeroWitness::Ray(p) => (1, p.clone()),
            _ => (2, Vec::new()),
        };
        key(a).cmp(&key(b))
    })
}

fn ray(v: &[Rational]) -> Vec<Rational> {
    primitive_ray(v).into_iter().map(Rational::from_integer).collect()
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

/// Exact evaluation at signed unit vectors, at `e_i ± e_j`, and at
/// `samples` random integer directions; returns a zero or sign-change witness.
pub fn search_witness(w: &RatPoly, samples: usize, seed: u64) -> Option<ZeroWitness> {
    let n = w.n_vars();
    let mut cands: Vec<Vec<Rational>> = Vec::new();
    let unit = |i: usize| -> Vec<Rational> {
        (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
    };
    for i in 0..n {
        cands.push(unit(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            for s in [1, -1] {
                let mut v = unit(i);
                v[j] = Rational::from_integer(s.into());
                cands.push(v);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while cands.len() < samples + n * n {
        let v: Vec<Rational> = (0..n).map(|_| Rational::from_integer(rng.gen_range(-100i64..=100).into())).collect();
        if v.iter().any(|c| !c.is_zero()) {
            cands.push(v);
        }
    }
    let values: Vec<Rational> = cands
        .par_iter()
        .map(|v| w.evaluate_exact(v).expect("dimension checked by caller"))
        .collect();
    let zero = least_zero(cands.iter().zip(&values).filter(|(_, x)| x.is_zero()).map(|(v, _)| zero_witness(v)));
    if zero.is_some() {
        return zero;
    }
    let s0 = sign(&values[0]);
    cands
        .iter()
        .zip(&values)
        .find(|(_, x)| sign(x) != s0)
        .map(|(v, _)| ZeroWitness::SignChange(ray(&cands[0]), ray(v)))
}

/// One axis-aligned cell on a face of the cube `[-1, 1]^n`.
#[derive(Debug, Clone)]
struct Cell {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

enum CellResult {
    /// `|W| >= bound` on the sphere points over this cell.
    Certified(Rational),
    Zero(Vec<Rational>),
    Open { center: Vec<Rational>, sign: i8, sampled: Rational },
}

pub enum Subdivision {
    Certified(Rational),
    Witness(ZeroWitness),
    Exhausted { spent: u64, uncertified: usize, certified_part_bound: Option<Rational>, min_sampled: Rational },
}

struct Bounder {
    w: RatPoly,
    grads: Vec<RatPoly>,
    half_degree: u32,
}

impl Bounder {
    /// Sup of `|p|` over the box: `Σ |c| Π max(|lo_k|, |hi_k|)^{a_k}`.
    fn sup(p: &RatPoly, m: &[Rational]) -> Rational {
        p.terms()
            .map(|(mono, c)| {
                mono.exps().iter().zip(m).fold(c.abs(), |acc, (&e, mk)| {
                    let mut acc = acc;
                    for _ in 0..e {
                        acc *= mk;
                    }
                    acc
                })
            })
            .sum()
    }

    fn eval(&self, cell: &Cell) -> CellResult {
        let half = rat(1, 2);
        let center: Vec<Rational> = cell.lo.iter().zip(&cell.hi).map(|(a, b)| (a + b) * &half).collect();
        let value = self.w.evaluate_exact(&center).expect("dimension");
        if value.is_zero() {
            return CellResult::Zero(center);
        }
        let m: Vec<Rational> = cell.lo.iter().zip(&cell.hi).map(|(a, b)| a.abs().max(b.abs())).collect();
        let mut slack = Rational::zero();
        for (k, g) in self.grads.iter().enumerate() {
            let h = (&cell.hi[k] - &cell.lo[k]) * &half;
            if !h.is_zero() && !g.is_zero() {
                slack += h * Self::sup(g, &m);
            }
        }
        let lb = value.abs() - slack;
        // sphere point x/|x| with |x|^2 <= Σ m_k^2
        let r2: Rational = m.iter().map(|v| v * v).sum();
        let mut scale = Rational::one();
        for _ in 0..self.half_degree {
            scale *= &r2;
        }
        if lb.is_positive() {
            CellResult::Certified(lb / scale)
        } else {
            let sampled = value.abs();
            CellResult::Open { center, sign: sign(&value), sampled }
        }
    }
}

fn split(cell: &Cell) -> Vec<Cell> {
    let mut out = vec![cell.clone()];
    for k in 0..cell.lo.len() {
        if cell.lo[k] == cell.hi[k] {
            continue;
        }
        let mid = (&cell.lo[k] + &cell.hi[k]) / rat(2, 1);
        out = out
            .into_iter()
            .flat_map(|c| {
                let mut a = c.clone();
                let mut b = c;
                a.hi[k] = mid.clone();
                b.lo[k] = mid.clone();
                [a, b]
            })
            .collect();
    }
    out
}

/// Breadth-first certified subdivision of the cube surface. Each level is
/// evaluated in parallel but reduced in cell order, so the outcome does not
/// depend on scheduling. `budget` caps the number of cells evaluated.
pub fn subdivide(w: &RatPoly, budget: Option<u64>) -> Subdivision {
    let n = w.n_vars();
    let bounder = Bounder {
        w: w.clone(),
        grads: (0..n).map(|k| w.partial(k)).collect(),
        half_degree: w.degree() / 2,
    };
    let mut level = Vec::new();
    for i in 0..n {
        for s in [1i64, -1] {
            let mut lo = vec![rat(-1, 1); n];
            let mut hi = vec![rat(1, 1); n];
            lo[i] = rat(s, 1);
            hi[i] = rat(s, 1);
            level.push(Cell { lo, hi });
        }
    }
    let mut spent = 0u64;
    let mut min_lb: Option<Rational> = None;
    let mut min_sampled: Option<Rational> = None;
    let mut reference: Option<(Vec<Rational>, i8)> = None;
    while !level.is_empty() {
        if budget.is_some_and(|b| spent + level.len() as u64 > b) {
            return Subdivision::Exhausted {
                spent,
                uncertified: level.len(),
                certified_part_bound: min_lb,
                min_sampled: min_sampled.unwrap_or_else(Rational::zero),
            };
        }
        spent += level.len() as u64;
        let results: Vec<CellResult> = level.par_iter().map(|c| bounder.eval(c)).collect();
        let zero = least_zero(results.iter().filter_map(|r| match r {
            CellResult::Zero(c) => Some(zero_witness(c)),
            _ => None,
        }));
        if let Some(z) = zero {
            return Subdivision::Witness(z);
        }
        let mut next = Vec::new();
        for (cell, r) in level.iter().zip(results) {
            match r {
                CellResult::Certified(lb) => {
                    if min_lb.as_ref().is_none_or(|m| &lb < m) {
                        min_lb = Some(lb);
                    }
                }
                CellResult::Open { center, sign, sampled } => {
                    match &reference {
                        None => reference = Some((center.clone(), sign)),
                        Some((c0, s0)) if *s0 != sign => {
                            return Subdivision::Witness(ZeroWitness::SignChange(ray(c0), ray(&center)));
                        }
                        _ => {}
                    }
                    if min_sampled.as_ref().is_none_or(|m| &sampled < m) {
                        min_sampled = Some(sampled);
                    }
                    next.extend(split(cell));
                }
                CellResult::Zero(_) => unreachable!("handled above"),
            }
        }
        level = next;
    }
    Subdivision::Certified(min_lb.expect("at least one cell"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_normalization() {
        assert_eq!(zero_witness(&[rat(3, 1), rat(-4, 1)]), ZeroWitness::Point(vec![rat(3, 5), rat(-4, 5)]));
        assert_eq!(zero_witness(&[rat(-1, 2), rat(1, 2)]), ZeroWitness::Ray(vec![rat(1, 1), rat(-1, 1)]));
    }

    #[test]
    fn certifies_positive_form() {
        let w = RatPoly::radial(3, 1);
        match subdivide(&w, Some(1000)) {
            Subdivision::Certified(m) => assert!(m.is_positive() && m <= rat(1, 1)),
            _ => panic!("x^2+y^2+z^2 should certify"),
        }
    }

    #[test]
    fn finds_zero_of_indefinite_form() {
        let w = RatPoly::from_int_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], -1)]).unwrap();
        assert!(search_witness(&w, 10, 1).is_some());
        assert!(matches!(subdivide(&w, Some(1000)), Subdivision::Witness(_)));
    }
}
