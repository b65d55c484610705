// each test target uses only part of this module
#![allow(dead_code)]

//! Randomized algebraic laws shared by the property and acceptance targets.
//! Each law runs `cases` proptest cases with a fixed RNG.

use cz_core::criterion::gamma_ratio;
use cz_core::poly::monomials_of_degree;
use cz_core::scalar::{binom, factorial, gamma_half, rat, rat_int, PiPower};
use cz_core::{decompose, MonomialOrder, PiScalar, Poly, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Law = fn(u32) -> Result<(), String>;

pub const LAWS: &[(&str, Law)] = &[
    ("division_round_trip", division_round_trip),
    ("harmonic_symbol_on_radial_power", harmonic_symbol_on_radial_power),
    ("harmonic_symbol_kills_low_radial_powers", harmonic_symbol_kills_low_radial_powers),
    ("iterated_laplacian_of_radial_power", iterated_laplacian_of_radial_power),
    ("decomposition_round_trip", decomposition_round_trip),
    ("decomposition_uniqueness", decomposition_uniqueness),
    ("gamma_ratio_is_rational", gamma_ratio_is_rational),
    ("gamma_recurrence", gamma_recurrence),
    ("pi_scalar_canonical_form", pi_scalar_canonical_form),
];

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

/// Random homogeneous polynomial; about half the monomials are present.
fn poly(n: usize, d: u32) -> impl Strategy<Value = Poly> {
    let monos = monomials_of_degree(n, d);
    proptest::collection::vec(proptest::option::weighted(0.5, coeff()), monos.len()).prop_map(move |cs| {
        let terms = monos.iter().zip(cs).filter_map(|(m, c)| c.map(|c| (m.clone(), PiScalar::from_rational(c))));
        Poly::from_terms(n, d, terms).expect("homogeneous by construction")
    })
}

fn sized_poly(nmax: usize, dmax: u32) -> impl Strategy<Value = Poly> {
    (2..=nmax, 0..=dmax).prop_flat_map(|(n, d)| poly(n, d))
}

/// Harmonic projection of a random polynomial (the top layer of its decomposition).
fn harmonic(n: usize, d: u32) -> impl Strategy<Value = Poly> {
    poly(n, d).prop_map(move |p| {
        let top = decompose(&p).expect("decomposes").into_iter().find(|(_, k)| *k == 0);
        top.map(|(h, _)| h).unwrap_or_else(|| Poly::zero(n, d))
    })
}

fn eq(a: &Poly, b: &Poly, what: &str) -> Result<(), TestCaseError> {
    prop_assert_eq!(a, b, "{}", what);
    Ok(())
}

pub fn division_round_trip(cases: u32) -> Result<(), String> {
    let strat = (2usize..=3, 0u32..=4, 0u32..=4).prop_flat_map(|(n, dg, dh)| (poly(n, dg), poly(n, dh)));
    run(cases, strat, |(g, h)| {
        prop_assume!(!g.is_zero());
        let gh = g.checked_mul(&h).unwrap();
        for order in [MonomialOrder::GradedLex, MonomialOrder::GradedRevLex] {
            let q = gh.try_divide_with_order(&g, order).unwrap();
            prop_assert_eq!(q.as_ref(), Some(&h));
        }
        Ok(())
    })
}

/// `P(∂)|x|^(2k) = 2^d k!/(k-d)! P |x|^(2(k-d))` for harmonic `P` of degree `d <= k`, else 0.
pub fn harmonic_symbol_on_radial_power(cases: u32) -> Result<(), String> {
    let strat = (2usize..=4, 1u32..=3, 0u32..=6).prop_flat_map(|(n, j, k)| (harmonic(n, 2 * j), Just(k)));
    run(cases, strat, |(p, k)| {
        prop_assume!(!p.is_zero());
        let n = p.n_vars();
        let d = p.degree();
        let lhs = p.apply_diff(&Poly::radial(n, k)).unwrap();
        let rhs = if d <= k {
            let c = rat_int(1 << d) * Rational::from_integer(factorial(k as u64) / factorial((k - d) as u64));
            p.scale_rational(&c).checked_mul(&Poly::radial(n, k - d)).unwrap()
        } else {
            Poly::zero(n, 0)
        };
        prop_assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()), "{} vs {}", lhs, rhs);
        Ok(())
    })
}

/// `P(∂)|x|^(2j) = 0` for harmonic `P` of degree `d` and `1 <= j <= d-1`.
pub fn harmonic_symbol_kills_low_radial_powers(cases: u32) -> Result<(), String> {
    let strat = (2usize..=4, 2u32..=6).prop_flat_map(|(n, d)| (harmonic(n, d), 1..d));
    run(cases, strat, |(p, j)| {
        prop_assume!(!p.is_zero());
        prop_assert!(p.apply_diff(&Poly::radial(p.n_vars(), j)).unwrap().is_zero());
        Ok(())
    })
}

/// `Δ^j |x|^(2k) = 4^j j! k!/(k-j)! C(n/2+k-1, j) |x|^(2(k-j))` for `k >= j`, else 0.
pub fn iterated_laplacian_of_radial_power(cases: u32) -> Result<(), String> {
    run(cases, (2usize..=5, 0u32..=6, 0u32..=6), |(n, j, k)| {
        let mut lhs = Poly::radial(n, k);
        for _ in 0..j {
            lhs = lhs.laplacian();
        }
        if k < j {
            prop_assert!(lhs.is_zero());
            return Ok(());
        }
        let f = |m: u32| Rational::from_integer(factorial(m as u64));
        let c = rat_int(4).pow(j as i32) * f(j) * f(k) / f(k - j) * binom(&(rat(n as i64, 2) + rat_int(k as i64 - 1)), j as i64);
        eq(&lhs, &Poly::radial(n, k - j).scale_rational(&c), "Δ^j |x|^2k")
    })
}

pub fn decomposition_round_trip(cases: u32) -> Result<(), String> {
    run(cases, sized_poly(4, 8), |p| {
        let layers = decompose(&p).unwrap();
        let mut sum = Poly::zero(p.n_vars(), p.degree());
        for (h, k) in &layers {
            prop_assert!(h.is_harmonic());
            prop_assert_eq!(h.degree() + 2 * k, p.degree());
            sum = sum.checked_add(&h.checked_mul(&Poly::radial(p.n_vars(), *k)).unwrap()).unwrap();
        }
        eq(&sum, &p, "Σ H |x|^2k")
    })
}

/// Rebuilding `p` from known harmonic layers in another term order gives back
/// exactly those layers.
pub fn decomposition_uniqueness(cases: u32) -> Result<(), String> {
    let strat = (2usize..=4, 2u32..=6).prop_flat_map(|(n, d)| (harmonic(n, d), harmonic(n, d - 2), harmonic(n, d % 2)));
    run(cases, strat, |(h0, h1, h2)| {
        let n = h0.n_vars();
        let d = h0.degree();
        let mut layers = vec![(h0, 0u32), (h1, 1)];
        if d >= 4 {
            layers.push((h2, (d - d % 2) / 2));
        }
        let mut p = Poly::zero(n, d);
        for (h, k) in &layers {
            p = p.checked_add(&h.checked_mul(&Poly::radial(n, *k)).unwrap()).unwrap();
        }
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())).collect();
        terms.reverse();
        let shuffled = Poly::from_terms(n, d, terms).unwrap();
        let expected: Vec<(Poly, u32)> = layers.into_iter().filter(|(h, _)| !h.is_zero()).collect();
        prop_assert_eq!(decompose(&p).unwrap(), expected.clone());
        prop_assert_eq!(decompose(&shuffled).unwrap(), expected);
        Ok(())
    })
}

pub fn gamma_ratio_is_rational(cases: u32) -> Result<(), String> {
    run(cases, (2u32..=9, 1u32..=20, 1u32..=20), |(n, j, j0)| {
        // gamma_ratio insists the quotient is free of π and √2
        let r = gamma_ratio(n, j, j0).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(r != rat_int(0));
        Ok(())
    })
}

pub fn gamma_recurrence(cases: u32) -> Result<(), String> {
    run(cases, 1u32..=60, |m| {
        prop_assert_eq!(gamma_half(m + 2), gamma_half(m).scale(&rat(m as i64, 2)));
        Ok(())
    })
}

fn pi_scalar() -> impl Strategy<Value = PiScalar> {
    proptest::collection::vec((coeff(), -4i32..=4), 0..4).prop_map(|ts| {
        ts.into_iter().fold(PiScalar::from_int(0), |acc, (c, e)| acc + PiScalar::monomial(c, PiPower::pi_half(e)))
    })
}

/// Text round-trip is the identity on canonical forms; equality and sums
/// behave as in a commutative ring.
pub fn pi_scalar_canonical_form(cases: u32) -> Result<(), String> {
    run(cases, (pi_scalar(), pi_scalar(), pi_scalar()), |(a, b, c)| {
        let text = a.to_string();
        let back: PiScalar = text.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), PiScalar::from_int(0));
        if a == b && b == c {
            prop_assert_eq!(&a, &c);
        }
        Ok(())
    })
}
