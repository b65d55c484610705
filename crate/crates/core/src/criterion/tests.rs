use super::*;
use crate::scalar::{rat, rat_int, PiScalar};

fn p2(terms: &[(&[u32], i64)]) -> Poly {
    Poly::from_int_terms(2, terms).unwrap()
}

fn xy() -> Poly {
    p2(&[(&[1, 1], 1)])
}

fn rot4() -> Poly {
    p2(&[(&[3, 1], 1), (&[1, 3], -1)])
}

fn h4() -> Poly {
    p2(&[(&[4, 0], 1), (&[2, 2], -6), (&[0, 4], 1)])
}

fn h8() -> Poly {
    p2(&[(&[8, 0], 1), (&[0, 8], 1), (&[6, 2], -28), (&[2, 6], -28), (&[4, 4], 70)])
}

fn spec(comps: Vec<(u32, Poly)>) -> OperatorSpec {
    let n = comps[0].1.n_vars();
    OperatorSpec::new(HarmonicExpansion::new(n, comps).unwrap())
}

fn example1(lambda: Rational) -> OperatorSpec {
    if lambda.is_zero() {
        return spec(vec![(2, xy())]);
    }
    spec(vec![(2, xy()), (4, rot4().scale_rational(&lambda))])
}

#[test]
fn multiplier_examples() {
    let q = assemble_multiplier(&spec(vec![(2, xy())]));
    assert_eq!(q.numerator, xy().scale(&-PiScalar::pi()));
    assert_eq!(q.denom_power, 2);

    let q = assemble_multiplier(&example1(rat_int(3)));
    let expected = xy()
        .scale(&-PiScalar::pi())
        .checked_mul(&Poly::radial(2, 1))
        .unwrap()
        .checked_add(&rot4().scale(&PiScalar::pi().scale(&rat(3, 2))))
        .unwrap();
    assert_eq!(q.numerator, expected);

    let x1x2 = Poly::from_int_terms(3, &[(&[1, 1, 0], 1)]).unwrap();
    let q = assemble_multiplier(&spec(vec![(2, x1x2.clone())]));
    assert_eq!(q.numerator, x1x2.scale(&PiScalar::pi().scale(&rat(-4, 3))));
}

#[test]
fn multiplier_value_matches_factored_form() {
    // ξη/|ξ|^2 (−π + λπ/2 (ξ²−η²)/|ξ|²)
    let lambda = 0.7;
    let m = assemble_multiplier(&example1(Rational::from_float(0.7).unwrap()));
    for &(a, b) in &[(0.3, 0.9), (1.0, -2.0), (0.5, 0.5)] {
        let r2: f64 = a * a + b * b;
        let expected = a * b / r2 * (-std::f64::consts::PI + lambda * std::f64::consts::PI / 2.0 * (a * a - b * b) / r2);
        assert!((m.value_at(&[a, b]).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn gamma_ratios() {
    assert_eq!(gamma_ratio(2, 2, 1).unwrap(), rat(-1, 2));
    assert_eq!(gamma_ratio(3, 2, 1).unwrap(), rat(-2, 5));
    for n in 2..8 {
        for j in 1..6 {
            assert_eq!(gamma_ratio(n, j, j).unwrap(), rat_int(1));
        }
    }
}

#[test]
fn three_plane_examples() {
    let v = check_condition_iv(&spec(vec![(2, xy()), (4, h4())]), 1000).unwrap();
    assert_eq!(v, Verdict::NotControlled { reason: NotControlledReason::DivisibilityFailure { j: 2 } });

    let v = check_condition_iv(&spec(vec![(2, xy()), (4, rot4())]), 1000).unwrap();
    assert!(v.is_controlled());

    let v = check_condition_iv(&example1(rat_int(2)), 1000).unwrap();
    assert_eq!(
        v,
        Verdict::NotControlled {
            reason: NotControlledReason::ZeroOnSphere { witness: ZeroWitness::Point(vec![rat_int(1), rat_int(0)]) }
        }
    );
}

#[test]
fn example1_threshold() {
    for (num, den) in [(0, 1), (1, 1), (-1, 1), (19, 10), (-19, 10), (2, 1), (-2, 1), (21, 10), (-21, 10), (5, 1), (-5, 1)] {
        let lambda = rat(num, den);
        let v = check_condition_iv(&example1(lambda.clone()), 1000).unwrap();
        let controlled = lambda.abs() < rat_int(2);
        assert_eq!(v.is_controlled(), controlled, "lambda = {lambda}");
        if !controlled {
            assert!(matches!(v, Verdict::NotControlled { reason: NotControlledReason::ZeroOnSphere { .. } }));
        }
    }
}

#[test]
fn example3_not_controlled() {
    let g2 = gamma_j(2, 2).unwrap().try_invert().unwrap().unwrap();
    let g4 = gamma_j(2, 4).unwrap().try_invert().unwrap().unwrap();
    let g8 = gamma_j(2, 8).unwrap().try_invert().unwrap().unwrap();
    for eps in [rat(1, 100), rat(-1, 7), rat(3, 1)] {
        let s = spec(vec![
            (2, xy().scale(&g2)),
            (4, h4().scale(&g4).scale_rational(&eps)),
            (8, h8().scale(&g8).scale_rational(&-eps.clone())),
        ]);
        let v = check_condition_iv(&s, 1000).unwrap();
        assert_eq!(v, Verdict::NotControlled { reason: NotControlledReason::DivisibilityFailure { j: 2 } });
    }
    // P4 |ξ|^4 − P8 is divisible by P2 as claimed
    let diff = h4().checked_mul(&Poly::radial(2, 2)).unwrap().checked_sub(&h8()).unwrap();
    assert!(diff.try_divide(&xy()).unwrap().is_some());
}

#[test]
fn witnesses_for_irrational_zeros() {
    // W = -(3/2)x^2 + (7/2)y^2 has zeros at irrational slopes
    let v = check_condition_iv(&example1(rat_int(5)), 1000).unwrap();
    match v {
        Verdict::NotControlled { reason: NotControlledReason::ZeroOnSphere { witness: ZeroWitness::SignChange(a, b) } } => {
            let Reduction::Divisible { w, .. } = reduce(&example1(rat_int(5))).unwrap() else { panic!() };
            let (va, vb) = (w.evaluate_exact(&a).unwrap(), w.evaluate_exact(&b).unwrap());
            assert!(va.is_positive() != vb.is_positive());
        }
        other => panic!("unexpected {other:?}"),
    }
    // double root at an irrational slope: only a Sturm interval is possible
    let w = RatPoly::from_int_terms(2, &[(&[4, 0], 1), (&[2, 2], -4), (&[0, 4], 4)]).unwrap();
    assert!(matches!(plane_witness(&w).unwrap(), ZeroWitness::Interval { .. }));
    // rational slope 3/4 lands on the rational point (4/5, 3/5)
    let w = RatPoly::from_int_terms(2, &[(&[2, 0], 9), (&[0, 2], -16)]).unwrap();
    assert_eq!(plane_witness(&w).unwrap(), ZeroWitness::Point(vec![rat(4, 5), rat(-3, 5)]));
}

#[test]
fn single_component_is_controlled() {
    let x1x2 = Poly::from_int_terms(3, &[(&[1, 1, 0], 1)]).unwrap();
    for s in [spec(vec![(2, xy())]), spec(vec![(4, h4())]), spec(vec![(2, x1x2)])] {
        let v = check_condition_iv(&s, 1000).unwrap();
        match v {
            Verdict::Controlled { certified_min, .. } => assert_eq!(certified_min, rat_int(1)),
            other => panic!("unexpected {other:?}"),
        }
    }
}

#[test]
fn three_dimensional_cases() {
    let x1x2 = Poly::from_int_terms(3, &[(&[1, 1, 0], 1)]).unwrap();
    let e5 = crate::harmonic::example5_generate(1);
    // W = 1 + (γ4/γ2)(z^2 − y^2/3) over |x|^2 ... controlled for a small factor
    let small = spec(vec![(2, x1x2.clone()), (4, e5.scale_rational(&rat(1, 2)))]);
    let v = check_condition_iv(&small, 100_000).unwrap();
    assert!(v.is_controlled(), "{v:?}");
    let big = spec(vec![(2, x1x2), (4, e5.scale_rational(&rat_int(10)))]);
    let v = check_condition_iv(&big, 100_000).unwrap();
    assert!(matches!(v, Verdict::NotControlled { reason: NotControlledReason::ZeroOnSphere { .. } }), "{v:?}");
}

#[test]
fn undecided_when_budget_is_tiny() {
    let x1x2 = Poly::from_int_terms(3, &[(&[1, 1, 0], 1)]).unwrap();
    let e5 = crate::harmonic::example5_generate(1);
    let s = spec(vec![(2, x1x2), (4, e5.scale_rational(&rat(3, 2)))]);
    let v = check_condition_iv(&s, 6).unwrap();
    assert_eq!(v.status(), "undecided");
}

#[test]
fn verdict_json_shape() {
    let v = check_condition_iv(&example1(rat_int(2)), 10).unwrap();
    let j = v.to_json();
    assert_eq!(j["status"], "not_controlled");
    assert_eq!(j["reason"], "zero_on_sphere");
    assert_eq!(j["witness"]["point"], json!(["1", "0"]));
}
