use super::*;
use crate::criterion::OperatorSpec;
use crate::harmonic::{decompose, HarmonicExpansion};
use crate::scalar::{binom_int, gamma_j};

fn pi_inv(r: Rational) -> PiScalar {
    PiScalar::pi_pow(-2).scale(&r)
}

#[test]
fn first_fundamental_solutions() {
    // log|x| / 2π in the plane, |x|^(2-n) / ((2-n) ω_n) otherwise
    let e = fundamental_constants(2, 1).unwrap();
    assert_eq!(e.alpha, PiScalar::zero());
    assert_eq!(e.beta, pi_inv(rat(1, 4)));
    let e = fundamental_constants(3, 1).unwrap();
    assert_eq!(e.alpha, pi_inv(rat(-1, 4)));
    let e = fundamental_constants(4, 1).unwrap();
    assert_eq!(e.alpha, PiScalar::pi_pow(-4).scale(&rat(-1, 4)));
    for n in 2..9 {
        assert!(fundamental_defect(n, 1).unwrap().is_zero(), "n = {n}");
    }
}

#[test]
fn laplacian_lowers_the_order() {
    for n in 2..9 {
        for nn in 2..9 {
            let d = fundamental_defect(n, nn).unwrap();
            assert!(d.is_polynomial(), "n={n} N={nn}: {d:?}");
        }
    }
}

#[test]
fn printed_sign_breaks_the_recursion_at_the_case_boundary() {
    for n in [4u32, 6, 8] {
        let nn = n / 2;
        let mut e = fundamental_constants(n, nn).unwrap();
        assert_eq!(e.case, CaseTag::EvenHighOrder);
        e.beta = -e.beta;
        e.alpha = -e.alpha;
        let lap = e.as_radial_fn().laplacian(n);
        let d = lap.sub(&fundamental_constants(n, nn - 1).unwrap().as_radial_fn());
        assert!(!d.is_polynomial());
    }
}

#[test]
fn a_coefficient_examples() {
    let a = a_coefficients(2, 1).unwrap();
    assert_eq!(a, vec![pi_inv(rat(-1, 4)), pi_inv(rat(1, 4))]);
    let a = a_coefficients(2, 2).unwrap();
    assert_eq!(a[3], pi_inv(rat(-1, 96)));
    // closed form is checked inside a_coefficients
    for n in 2..7 {
        for nn in 1..7 {
            a_coefficients(n, nn).unwrap();
        }
    }
}

#[test]
fn b_examples() {
    let b = b_polynomial(2, 1).unwrap();
    assert_eq!(b.coeffs, vec![pi_inv(rat_int(1))]);
    for n in 2..6 {
        for nn in 1..6 {
            let b = b_polynomial(n, nn).unwrap();
            assert_eq!(b.coeffs.len(), nn as usize);
        }
    }
}

#[test]
fn radial_law_matches_repeated_laplacian() {
    for n in 2..5u32 {
        for k in 0..5 {
            let mut p = Poly::radial(n as usize, k);
            for j in 0..=k + 1 {
                let expected = if j > k {
                    PiScalar::zero()
                } else {
                    PiScalar::from_rational(radial_laplacian_power(n, j, k))
                };
                if j <= k {
                    assert_eq!(p, Poly::radial(n as usize, k - j).scale(&expected), "n={n} j={j} k={k}");
                } else {
                    assert!(p.is_zero());
                }
                p = p.laplacian();
            }
        }
    }
}

fn plane_spec(nn: u32) -> OperatorSpec {
    // Re (x + iy)^(2j) for j = 1..N
    let comps = (1..=nn)
        .map(|j| {
            let d = 2 * j;
            let terms: Vec<(Vec<u32>, PiScalar)> = (0..=d)
                .step_by(2)
                .map(|b| {
                    let c = binom_int(d as i64, b as i64) * sign((b / 2) as i64);
                    (vec![d - b, b], PiScalar::from_rational(c))
                })
                .collect();
            (d, Poly::from_terms(2, d, terms).unwrap())
        })
        .collect();
    OperatorSpec::new(HarmonicExpansion::new(2, comps).unwrap())
}

#[test]
fn s_matches_closed_form_and_decomposition() {
    for nn in 2..5 {
        let spec = plane_spec(nn);
        let s = s_polynomial(&spec).unwrap();
        assert_eq!(s.pieces.len(), nn as usize - 1);
        assert_eq!(s, s_closed_form(&spec).unwrap());
        // each harmonic layer of a piece is c_{l,j} P_{2j}
        for (idx, piece) in s.pieces.iter().enumerate() {
            let sdeg = idx as u32 + 1;
            for (h, k) in decompose(piece).unwrap() {
                let j = sdeg - k;
                let p = spec.expansion.component(2 * j).unwrap();
                assert_eq!(h, p.scale(&c_lj(2, nn, nn + sdeg, j).unwrap()));
            }
        }
    }
}

#[test]
fn c_ljk_closed_matches_derived() {
    for n in 2..7 {
        for nn in 2..7 {
            for l in nn + 1..2 * nn {
                for j in 1..=(l - nn) {
                    for k in 0..=(l - nn - j) {
                        assert_eq!(
                            c_ljk(n, nn, l, j, k).unwrap(),
                            c_ljk_derived(n, nn, l, j, k).unwrap(),
                            "n={n} N={nn} l={l} j={j} k={k}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn bessel_coefficients() {
    // J_0(r) = 1 - r^2/4 + ...
    assert_eq!(bessel_series_coeff(&rat_int(0), 1).unwrap(), PiScalar::from_rational(rat(-1, 4)));
    // J_{1/2}(r)/r^{1/2} = sqrt(2/π) sin r / r
    let c = bessel_series_coeff(&rat(1, 2), 1).unwrap();
    let expected = -(2.0 / std::f64::consts::PI).sqrt() / 6.0;
    assert!((c.to_f64() - expected).abs() < 1e-15);
    assert!(bessel_series_coeff(&rat(1, 3), 0).is_err());
}

#[test]
fn c2j_examples() {
    for nn in [3, 5] {
        let (s, c) = c2j(2, nn, 1).unwrap();
        assert_eq!(s, PiScalar::from_rational(rat(1, 16)));
        assert_eq!(c, s);
    }
    for n in 2..7 {
        for nn in 2..8 {
            for j in 1..nn {
                let (s, c) = c2j(n, nn, j).unwrap();
                assert_eq!(s, c, "n={n} N={nn} j={j}");
                let positive = c.to_f64() > 0.0;
                assert_eq!(positive, j % 2 == 1);
            }
        }
    }
}

#[test]
fn a2p_closed_form_and_stabilization() {
    for n in 2..6 {
        for nn in 1..7 {
            for p in 0..nn {
                let f = a2p_functional(n, nn, p).unwrap();
                assert_eq!(f.mu, a2p_functional(n, p + 1, p).unwrap().mu);
                if p >= 1 {
                    assert_eq!(f.mu[&p], c2j_closed(n, p).unwrap());
                }
            }
        }
    }
    assert!(a2p_functional(2, 3, 0).unwrap().mu.is_empty());
}

#[test]
fn gamma_of_example_components() {
    // γ_2 = -π in the plane
    assert_eq!(gamma_j(2, 2).unwrap(), -PiScalar::pi());
}
