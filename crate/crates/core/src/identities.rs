//! Exact verification of the combinatorial identities behind the constants,
//! each side summed independently over finite parameter ranges.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Result;
use crate::scalar::{binom, factorial, falling, format_rational, gamma_of, rat, rat_int, PiScalar, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityKind {
    FallingSum,
    FactorialSum,
    BesselWeightSum,
    ShiftedWeightSum,
    TripleBinomial,
    DRecursion,
    DFirstSumVanishes,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 7] = [
        IdentityKind::FallingSum,
        IdentityKind::FactorialSum,
        IdentityKind::BesselWeightSum,
        IdentityKind::ShiftedWeightSum,
        IdentityKind::TripleBinomial,
        IdentityKind::DRecursion,
        IdentityKind::DFirstSumVanishes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::FallingSum => "falling_sum",
            IdentityKind::FactorialSum => "factorial_sum",
            IdentityKind::BesselWeightSum => "bessel_weight_sum",
            IdentityKind::ShiftedWeightSum => "shifted_weight_sum",
            IdentityKind::TripleBinomial => "triple_binomial",
            IdentityKind::DRecursion => "d_recursion",
            IdentityKind::DFirstSumVanishes => "d_first_sum_vanishes",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub params: Vec<(&'static str, Rational)>,
    pub lhs: PiScalar,
    pub rhs: PiScalar,
    pub equal: bool,
    /// Outside the range where every factorial argument is nonnegative.
    pub skipped: bool,
}

impl IdentityReport {
    fn new(kind: IdentityKind, params: Vec<(&'static str, Rational)>, lhs: PiScalar, rhs: PiScalar) -> Self {
        let equal = lhs == rhs;
        IdentityReport { kind, params, lhs, rhs, equal, skipped: false }
    }

    fn skipped(kind: IdentityKind, params: Vec<(&'static str, Rational)>) -> Self {
        IdentityReport { kind, params, lhs: PiScalar::zero(), rhs: PiScalar::zero(), equal: false, skipped: true }
    }

    pub fn failed(&self) -> bool {
        !self.skipped && !self.equal
    }

    pub fn to_json(&self) -> Value {
        let params: serde_json::Map<String, Value> =
            self.params.iter().map(|(k, v)| (k.to_string(), json!(format_rational(v)))).collect();
        json!({
            "identity": self.kind.name(),
            "params": params,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "equal": self.equal,
            "skipped": self.skipped,
        })
    }
}

fn r(v: i64) -> Rational {
    rat_int(v)
}

fn half(n: u32) -> Rational {
    rat(n as i64, 2)
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn fact(k: i64) -> Rational {
    Rational::from_integer(factorial(k as u64))
}

/// `x!` as `Γ(x+1)` on the half-integer lattice.
fn fact_gen(x: &Rational) -> Result<PiScalar> {
    gamma_of(&(x + Rational::one()))
}

fn nk(n: u32, nn: u32) -> Vec<(&'static str, Rational)> {
    vec![("n", r(n as i64)), ("N", r(nn as i64))]
}

/// `Σ_{i=L}^{2N-1} (N-n/2)_i (-1)^i / i! C(i,L) = (-1)^L C(N-n/2, L) C(n/2+N-1, 2N-1-L)`,
/// with `(a)_i` the falling factorial.
pub fn verify_falling_sum(n: u32, nn: u32, l: u32) -> IdentityReport {
    let a = r(nn as i64) - half(n);
    let (l_, top) = (l as i64, 2 * nn as i64 - 1);
    let mut lhs = Rational::zero();
    for i in l_..=top {
        lhs += falling(&a, i as u64) * sign(i) / fact(i) * binom(&r(i), l_);
    }
    let rhs = sign(l_) * binom(&a, l_) * binom(&(half(n) + r(nn as i64 - 1)), top - l_);
    let mut p = nk(n, nn);
    p.push(("L", r(l_)));
    IdentityReport::new(IdentityKind::FallingSum, p, lhs.into(), rhs.into())
}

/// `Σ_{i=L}^{2N-1} (i-N+n/2-1)!/i! C(i,L) = (L-N+n/2-1)!/L! C(N+n/2-1, 2N-1-L)`.
/// Factorials of half-integers are `Γ(x+1)`; tuples with `L-N+n/2-1 < 0` are skipped.
pub fn verify_factorial_sum(n: u32, nn: u32, l: u32) -> Result<IdentityReport> {
    let mut p = nk(n, nn);
    p.push(("L", r(l as i64)));
    let c = half(n) - r(nn as i64 + 1);
    let base = r(l as i64) + &c;
    if base < Rational::zero() {
        return Ok(IdentityReport::skipped(IdentityKind::FactorialSum, p));
    }
    let (l_, top) = (l as i64, 2 * nn as i64 - 1);
    let mut lhs = PiScalar::zero();
    for i in l_..=top {
        lhs += fact_gen(&(r(i) + &c))?.scale(&(binom(&r(i), l_) / fact(i)));
    }
    let rhs = fact_gen(&base)?.scale(&(binom(&(half(n) + r(nn as i64 - 1)), top - l_) / fact(l_)));
    Ok(IdentityReport::new(IdentityKind::FactorialSum, p, lhs, rhs))
}

/// The alternating sum closing the `C_{2j}` computation, `1 <= j <= N-1`.
pub fn verify_bessel_weight_sum(n: u32, nn: u32, j: u32) -> Result<IdentityReport> {
    let h = half(n);
    let (j_, n_) = (j as i64, nn as i64);
    let mut lhs = Rational::zero();
    for i in 0..=(n_ - 1 - j_) {
        let mut prod = Rational::one();
        for k in 0..=i {
            prod *= &h + r(2 * j_ + i - k);
        }
        let num = sign(i) * binom(&(r(i + n_ + j_ - 1) + &h), n_ - j_) * binom(&(&h + r(2 * j_ + i - 1)), i);
        lhs += num / ((r(i + j_) + &h) * fact(n_ - i - j_ - 1) * prod);
    }
    let g = gamma_of(&(r(j_) + &h))?.checked_div(&gamma_of(&(r(n_) + &h))?)?;
    let rhs = g.scale(&(binom(&r(n_ - 1), j_ - 1) / r(j_)));
    let mut p = nk(n, nn);
    p.push(("j", r(j_)));
    Ok(IdentityReport::new(IdentityKind::BesselWeightSum, p, lhs.into(), rhs))
}

/// The sum over `s` used for the higher coefficients, `N-1 >= L >= j >= k >= 0`.
pub fn verify_shifted_weight_sum(n: u32, nn: u32, l: u32, j: u32, k: u32) -> Result<IdentityReport> {
    let h = half(n);
    let (n_, l_, j_, k_) = (nn as i64, l as i64, j as i64, k as i64);
    let mut lhs = PiScalar::zero();
    for s in j_..n_ {
        let num = sign(s) * binom(&(&h + r(n_ + s - 1)), n_ - k_) * binom(&(&h + r(k_ + s - 1)), s - j_);
        let den = gamma_of(&(&h + r(s + l_ + 1)))?.scale(&((r(s) + &h) * fact(n_ - s - 1)));
        lhs += PiScalar::from_rational(num).checked_div(&den)?;
    }
    let c = sign(j_) * fact(n_ - l_ - 1) / fact(n_ - k_) * binom(&r(n_ - 1), l_)
        / (fact(k_) * binom(&(&h + r(k_ + j_ - 1)), k_));
    let rhs = PiScalar::from_rational(c).checked_div(&gamma_of(&(&h + r(n_)))?)?;
    let mut p = nk(n, nn);
    p.extend([("L", r(l_)), ("j", r(j_)), ("k", r(k_))]);
    Ok(IdentityReport::new(IdentityKind::ShiftedWeightSum, p, lhs, rhs))
}

/// `Σ_k C(m-r+s,k) C(nn+r-s,nn-k) C(r+k,m+nn) = C(r,m) C(s,nn)`.
pub fn verify_triple_binomial(m: u32, nn: u32, rr: &Rational, s: &Rational) -> IdentityReport {
    let (m_, n_) = (m as i64, nn as i64);
    let mut lhs = Rational::zero();
    for k in 0..=n_ {
        lhs += binom(&(r(m_) - rr + s), k) * binom(&(r(n_) + rr - s), n_ - k) * binom(&(rr + r(k)), m_ + n_);
    }
    let rhs = binom(rr, m_) * binom(s, n_);
    let p = vec![("m", r(m_)), ("nn", r(n_)), ("r", rr.clone()), ("s", s.clone())];
    IdentityReport::new(IdentityKind::TripleBinomial, p, lhs.into(), rhs.into())
}

/// `D(j,m) = Σ_i (-1)^i C(n/2+N+i+j-1, N-j-m-1) / (i! (N-i-j-1)! (n/2+i+j))`.
pub fn d_sum(n: u32, nn: u32, j: u32, m: u32) -> Rational {
    let h = half(n);
    let (n_, j_, m_) = (nn as i64, j as i64, m as i64);
    let mut total = Rational::zero();
    for i in 0..=(n_ - 1 - j_) {
        total += sign(i) * binom(&(&h + r(n_ + i + j_ - 1)), n_ - j_ - m_ - 1)
            / (fact(i) * fact(n_ - i - j_ - 1) * (&h + r(i + j_)));
    }
    total
}

/// `D(j,m) = D(j+m,0) / ((n/2+j)...(n/2+j+m-1))` with
/// `D(L,0) = Γ(n/2+L)/Γ(n/2+N) C(N-1,L)`; requires `j+m <= N-1`.
pub fn verify_d_recursion(n: u32, nn: u32, j: u32, m: u32) -> Result<IdentityReport> {
    let h = half(n);
    let l = j + m;
    let mut prod = Rational::one();
    for q in 0..m {
        prod *= &h + r((j + q) as i64);
    }
    let d_l0 = gamma_of(&(&h + r(l as i64)))?
        .checked_div(&gamma_of(&(&h + r(nn as i64)))?)?
        .scale(&binom(&r(nn as i64 - 1), l as i64));
    let rhs = d_l0.scale(&prod.recip());
    let mut p = nk(n, nn);
    p.extend([("j", r(j as i64)), ("m", r(m as i64))]);
    Ok(IdentityReport::new(IdentityKind::DRecursion, p, d_sum(n, nn, j, m).into(), rhs))
}

/// The first of the two sums `D(j,m)` splits into vanishes for `m >= 1`.
pub fn verify_d_first_sum(n: u32, nn: u32, j: u32, m: u32) -> IdentityReport {
    let h = half(n);
    let (n_, j_, m_) = (nn as i64, j as i64, m as i64);
    let mut lhs = Rational::zero();
    for i in 0..=(n_ - 1 - j_) {
        lhs += sign(i) / ((&h + r(j_)) * fact(i) * fact(n_ - i - j_ - 1))
            * binom(&(&h + r(i + j_ + n_ - 1)), n_ - j_ - m_ - 1);
    }
    let mut p = nk(n, nn);
    p.extend([("j", r(j_)), ("m", r(m_))]);
    IdentityReport::new(IdentityKind::DFirstSumVanishes, p, lhs.into(), PiScalar::zero())
}

/// Parameter ranges for [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRanges {
    pub identities: Vec<IdentityKind>,
    pub dims: Vec<u32>,
    pub orders: Vec<u32>,
    /// `m` and `nn` for the triple-binomial identity run over `0..=triple_max`.
    pub triple_max: u32,
    /// `r` and `s` values for the triple-binomial identity.
    pub triple_values: Vec<Rational>,
}

impl Default for SweepRanges {
    fn default() -> Self {
        let mut values: Vec<Rational> = (-3..=7).map(r).collect();
        values.extend((-5..=13).step_by(2).map(|v| rat(v, 2)));
        values.push(rat(1, 3));
        SweepRanges {
            identities: IdentityKind::ALL.to_vec(),
            dims: vec![2, 3, 4, 5],
            orders: (1..=8).collect(),
            triple_max: 5,
            triple_values: values,
        }
    }
}

impl SweepRanges {
    pub fn empty() -> Self {
        SweepRanges { identities: vec![], dims: vec![], orders: vec![], triple_max: 0, triple_values: vec![] }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Task {
    FallingSum(u32, u32, u32),
    FactorialSum(u32, u32, u32),
    BesselWeightSum(u32, u32, u32),
    ShiftedWeightSum(u32, u32, u32, u32, u32),
    Triple(u32, u32, Rational, Rational),
    DRec(u32, u32, u32, u32),
    DFirst(u32, u32, u32, u32),
}

impl Task {
    fn run(&self) -> Result<IdentityReport> {
        Ok(match self {
            Task::FallingSum(n, nn, l) => verify_falling_sum(*n, *nn, *l),
            Task::FactorialSum(n, nn, l) => verify_factorial_sum(*n, *nn, *l)?,
            Task::BesselWeightSum(n, nn, j) => verify_bessel_weight_sum(*n, *nn, *j)?,
            Task::ShiftedWeightSum(n, nn, l, j, k) => verify_shifted_weight_sum(*n, *nn, *l, *j, *k)?,
            Task::Triple(m, nn, a, b) => verify_triple_binomial(*m, *nn, a, b),
            Task::DRec(n, nn, j, m) => verify_d_recursion(*n, *nn, *j, *m)?,
            Task::DFirst(n, nn, j, m) => verify_d_first_sum(*n, *nn, *j, *m),
        })
    }
}

fn tasks(ranges: &SweepRanges) -> Vec<Task> {
    let mut out = Vec::new();
    for &kind in &ranges.identities {
        if kind == IdentityKind::TripleBinomial {
            for m in 0..=ranges.triple_max {
                for nn in 0..=ranges.triple_max {
                    for a in &ranges.triple_values {
                        for b in &ranges.triple_values {
                            out.push(Task::Triple(m, nn, a.clone(), b.clone()));
                        }
                    }
                }
            }
            continue;
        }
        for &n in &ranges.dims {
            for &nn in &ranges.orders {
                match kind {
                    IdentityKind::FallingSum => out.extend((0..2 * nn).map(|l| Task::FallingSum(n, nn, l))),
                    IdentityKind::FactorialSum => out.extend((0..2 * nn).map(|l| Task::FactorialSum(n, nn, l))),
                    IdentityKind::BesselWeightSum => out.extend((1..nn).map(|j| Task::BesselWeightSum(n, nn, j))),
                    IdentityKind::ShiftedWeightSum => {
                        for l in 0..nn {
                            for j in 0..=l {
                                for k in 0..=j {
                                    out.push(Task::ShiftedWeightSum(n, nn, l, j, k));
                                }
                            }
                        }
                    }
                    IdentityKind::DRecursion | IdentityKind::DFirstSumVanishes => {
                        let first = kind == IdentityKind::DFirstSumVanishes;
                        for j in 0..nn {
                            for m in (first as u32)..(nn - j) {
                                out.push(if first { Task::DFirst(n, nn, j, m) } else { Task::DRec(n, nn, j, m) });
                            }
                        }
                    }
                    IdentityKind::TripleBinomial => unreachable!(),
                }
            }
        }
    }
    out
}

/// Every report, in the deterministic order of the parameter sweep.
pub fn collect_reports(ranges: &SweepRanges) -> Result<Vec<IdentityReport>> {
    tasks(ranges).par_iter().map(Task::run).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<IdentityReport>,
}

impl SuiteSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures.len(),
            "failed": self.failures.iter().map(IdentityReport::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn run_suite(ranges: &SweepRanges) -> Result<SuiteSummary> {
    let reports = collect_reports(ranges)?;
    let skipped = reports.iter().filter(|r| r.skipped).count();
    let checked = reports.len() - skipped;
    let failures = reports.into_iter().filter(IdentityReport::failed).collect();
    Ok(SuiteSummary { checked, skipped, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_sum_examples() {
        assert!(verify_falling_sum(2, 2, 1).equal);
        assert!(verify_falling_sum(3, 3, 0).equal);
        assert!(verify_falling_sum(5, 4, 7).equal);
    }

    #[test]
    fn factorial_sum_examples() {
        for (n, nn, l) in [(4, 2, 1), (6, 3, 2), (3, 2, 2)] {
            let rep = verify_factorial_sum(n, nn, l).unwrap();
            assert!(!rep.skipped && rep.equal, "{rep:?}");
        }
        assert!(verify_factorial_sum(2, 3, 0).unwrap().skipped);
    }

    #[test]
    fn bessel_weight_examples() {
        for (n, nn, j) in [(2, 2, 1), (4, 5, 3), (3, 6, 5)] {
            assert!(verify_bessel_weight_sum(n, nn, j).unwrap().equal);
        }
    }

    #[test]
    fn shifted_weight_examples() {
        for (n, nn, l, j, k) in [(2, 3, 2, 1, 0), (3, 4, 3, 2, 1), (2, 5, 4, 4, 4)] {
            assert!(verify_shifted_weight_sum(n, nn, l, j, k).unwrap().equal);
        }
    }

    #[test]
    fn triple_binomial_examples() {
        let rep = verify_triple_binomial(0, 0, &r(1), &r(1));
        assert!(rep.equal);
        assert_eq!(rep.lhs, PiScalar::one());
        assert!(verify_triple_binomial(1, 2, &r(5), &r(3)).equal);
        assert!(verify_triple_binomial(0, 2, &rat(7, 2), &rat(3, 2)).equal);
    }

    #[test]
    fn d_recursion_examples() {
        assert!(verify_d_recursion(2, 4, 1, 2).unwrap().equal);
        assert!(verify_d_first_sum(3, 5, 0, 2).equal);
        // m = 0 is where the first sum carries all the weight
        assert!(!verify_d_first_sum(2, 4, 1, 0).equal);
    }

    #[test]
    fn suite_edges() {
        assert_eq!(collect_reports(&SweepRanges::empty()).unwrap().len(), 0);
        let single = SweepRanges {
            identities: vec![IdentityKind::BesselWeightSum],
            dims: vec![2],
            orders: vec![2],
            ..SweepRanges::empty()
        };
        assert_eq!(collect_reports(&single).unwrap().len(), 1);
        for kind in IdentityKind::ALL {
            assert_eq!(IdentityKind::from_name(kind.name()), Some(kind));
        }
    }
}
