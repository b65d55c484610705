//! Fourier multiplier of a polynomial operator and the divisibility /
//! nonvanishing test deciding whether `T*` is controlled by `T`.

mod certify;
mod sturm;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

pub use certify::{search_witness, subdivide, Subdivision, ZeroWitness};
pub use sturm::{
    circle_zeros, count_real_roots, count_roots_in, dehomogenize, isolate_roots, refine, sturm_circle_zero_count,
    sturm_sequence, CircleZero, UPoly,
};

use crate::error::{Error, Result};
use crate::harmonic::{expansion_from_numerator, HarmonicExpansion};
use crate::scalar::{format_rational, gamma_j, PiPower, Rational};
use crate::{Poly, RatPoly};

/// An even polynomial operator, given by the harmonic expansion of its kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    pub expansion: HarmonicExpansion,
}

impl OperatorSpec {
    pub fn new(expansion: HarmonicExpansion) -> Self {
        OperatorSpec { expansion }
    }

    pub fn from_numerator(num: &Poly) -> Result<Self> {
        Ok(OperatorSpec { expansion: expansion_from_numerator(num)? })
    }

    pub fn n_vars(&self) -> usize {
        self.expansion.n_vars()
    }
}

/// Multiplier `Q(ξ) / |ξ|^{2N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierForm {
    pub numerator: Poly,
    pub denom_power: u32,
}

impl MultiplierForm {
    pub fn value_at(&self, xi: &[f64]) -> Result<f64> {
        let r2: f64 = xi.iter().map(|v| v * v).sum();
        Ok(self.numerator.evaluate_float(xi)? / r2.powf(self.denom_power as f64 / 2.0))
    }
}

/// `Q = Σ γ_{2j} P_{2j} |x|^{2N-2j}`.
pub fn assemble_multiplier(spec: &OperatorSpec) -> MultiplierForm {
    let n = spec.n_vars();
    let top = spec.expansion.max_degree();
    let mut q = Poly::zero(n, top);
    for (d, p) in spec.expansion.components() {
        let g = gamma_j(n as u32, *d).expect("even degree >= 2, n >= 2");
        let term = p.scale(&g).checked_mul(&Poly::radial(n, (top - d) / 2)).expect("same dimension");
        q = q.checked_add(&term).expect("same degree");
    }
    MultiplierForm { numerator: q, denom_power: top }
}

/// `γ_{2j} / γ_{2j0}`, always rational.
pub fn gamma_ratio(n: u32, j: u32, j0: u32) -> Result<Rational> {
    let num = gamma_j(n, 2 * j)?;
    let den = gamma_j(n, 2 * j0)?;
    num.checked_div(&den)?
        .as_rational()
        .ok_or_else(|| Error::Internal(format!("gamma ratio {j}/{j0} in dimension {n} is not rational")))
}

/// Outcome of the divisibility step.
#[derive(Debug, Clone, PartialEq)]
pub enum Reduction {
    /// Every component is a multiple of the first one, `P_{2j} = P_{2j0} Q_{2j-2j0}`;
    /// `w = Σ (γ_{2j}/γ_{2j0}) Q_{2j-2j0} |x|^{2N-2j}` up to a positive power of π.
    Divisible { j0: u32, riesz: Poly, w: RatPoly },
    NotDivisible { j: u32 },
}

/// Divide every component by the first and form the normalized numerator `W`.
pub fn reduce(spec: &OperatorSpec) -> Result<Reduction> {
    let n = spec.n_vars();
    let comps = spec.expansion.components();
    let (d0, p0) = &comps[0];
    let top = spec.expansion.max_degree();
    let mut w = Poly::zero(n, top - d0);
    for (d, p) in comps {
        let Some(q) = p.try_divide(p0)? else {
            return Ok(Reduction::NotDivisible { j: d / 2 });
        };
        let ratio = gamma_ratio(n as u32, d / 2, d0 / 2)?;
        let term = q.scale_rational(&ratio).checked_mul(&Poly::radial(n, (top - d) / 2))?;
        w = w.checked_add(&term)?;
    }
    let w = rational_part(&w)?;
    if w.is_zero() {
        return Err(Error::Internal("normalized multiplier vanishes identically".into()));
    }
    Ok(Reduction::Divisible { j0: d0 / 2, riesz: p0.clone(), w })
}

/// Strip a common positive factor `π^{k/2} (√2)^e` shared by all coefficients.
pub fn rational_part(w: &Poly) -> Result<RatPoly> {
    let mut grade: Option<PiPower> = None;
    let mut out = Vec::new();
    for (m, c) in w.terms() {
        let (r, g) = c.as_monomial().ok_or(Error::MixedPiGrades)?;
        if grade.is_some_and(|h| h != g) {
            return Err(Error::MixedPiGrades);
        }
        grade = Some(g);
        out.push((m.exps().to_vec(), r));
    }
    RatPoly::from_terms(w.n_vars(), w.degree(), out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum NotControlledReason {
    DivisibilityFailure { j: u32 },
    ZeroOnSphere { witness: ZeroWitness },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// `T = R ∘ U` with `R` the Riesz transform of `riesz_poly` and `U`
    /// invertible; `|W| >= certified_min > 0` on the sphere.
    Controlled { riesz_poly: Poly, u_multiplier_numerator: RatPoly, certified_min: Rational },
    NotControlled { reason: NotControlledReason },
    /// Subdivision ran out of budget. `certified_part_bound` bounds `|W|`
    /// only on the part of the sphere already certified; `min_sampled` is the
    /// smallest `|W|` seen at a cell center (an upper bound for the true min).
    Undecided {
        u_multiplier_numerator: RatPoly,
        best_lower_bound: Option<Rational>,
        min_sampled: Rational,
        budget_spent: u64,
        uncertified_cells: usize,
    },
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Controlled { .. } => "controlled",
            Verdict::NotControlled { .. } => "not_controlled",
            Verdict::Undecided { .. } => "undecided",
        }
    }

    pub fn is_controlled(&self) -> bool {
        matches!(self, Verdict::Controlled { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::Controlled { riesz_poly, u_multiplier_numerator, certified_min } => json!({
                "status": self.status(),
                "reason": Value::Null,
                "witness": Value::Null,
                "certified_min": format_rational(certified_min),
                "riesz_poly": riesz_poly.to_json(),
                "u_multiplier": u_multiplier_numerator.to_json(),
            }),
            Verdict::NotControlled { reason } => {
                let (r, wit, j) = match reason {
                    NotControlledReason::DivisibilityFailure { j } => ("divisibility_failure", Value::Null, json!(j)),
                    NotControlledReason::ZeroOnSphere { witness } => ("zero_on_sphere", witness.to_json(), Value::Null),
                };
                json!({
                    "status": self.status(),
                    "reason": r,
                    "failing_j": j,
                    "witness": wit,
                    "certified_min": Value::Null,
                    "riesz_poly": Value::Null,
                    "u_multiplier": Value::Null,
                })
            }
            Verdict::Undecided { u_multiplier_numerator, best_lower_bound, min_sampled, budget_spent, uncertified_cells } => {
                json!({
                    "status": self.status(),
                    "reason": "budget_exhausted",
                    "witness": Value::Null,
                    "certified_min": Value::Null,
                    "best_lower_bound": best_lower_bound.as_ref().map(format_rational),
                    "min_sampled": format_rational(min_sampled),
                    "budget_spent": budget_spent,
                    "uncertified_cells": uncertified_cells,
                    "riesz_poly": Value::Null,
                    "u_multiplier": u_multiplier_numerator.to_json(),
                })
            }
        }
    }
}

/// Knobs for [`check_condition_iv_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Maximum number of subdivision cells (ignored in the plane, where the
    /// decision is exact and the bound search always terminates).
    pub budget: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { budget: 100_000, samples: 1000, seed: 0x5eed }
    }
}

pub fn check_condition_iv(spec: &OperatorSpec, budget: u64) -> Result<Verdict> {
    check_condition_iv_with(spec, &CheckConfig { budget, ..CheckConfig::default() })
}

pub fn check_condition_iv_with(spec: &OperatorSpec, cfg: &CheckConfig) -> Result<Verdict> {
    let (riesz, w) = match reduce(spec)? {
        Reduction::NotDivisible { j } => {
            return Ok(Verdict::NotControlled { reason: NotControlledReason::DivisibilityFailure { j } })
        }
        Reduction::Divisible { riesz, w, .. } => (riesz, w),
    };
    let zero = |witness| Ok(Verdict::NotControlled { reason: NotControlledReason::ZeroOnSphere { witness } });
    if w.n_vars() == 2 {
        if sturm_circle_zero_count(&w)? > 0 {
            return zero(plane_witness(&w)?);
        }
        return match subdivide(&w, None) {
            Subdivision::Certified(m) => {
                Ok(Verdict::Controlled { riesz_poly: riesz, u_multiplier_numerator: w, certified_min: m })
            }
            _ => Err(Error::Internal("Sturm count and subdivision disagree".into())),
        };
    }
    if let Some(wit) = search_witness(&w, cfg.samples, cfg.seed) {
        return zero(wit);
    }
    match subdivide(&w, Some(cfg.budget)) {
        Subdivision::Certified(m) => {
            Ok(Verdict::Controlled { riesz_poly: riesz, u_multiplier_numerator: w, certified_min: m })
        }
        Subdivision::Witness(wit) => zero(wit),
        Subdivision::Exhausted { spent, uncertified, certified_part_bound, min_sampled } => Ok(Verdict::Undecided {
            u_multiplier_numerator: w,
            best_lower_bound: certified_part_bound,
            min_sampled,
            budget_spent: spent,
            uncertified_cells: uncertified,
        }),
    }
}

/// Witness for a binary form known to vanish on the circle: an exact
/// rational zero if one exists, else a sign change or a Sturm interval.
fn plane_witness(w: &RatPoly) -> Result<ZeroWitness> {
    let one = Rational::one();
    let zeros = sturm::circle_zeros(w)?;
    let exact = zeros.iter().filter_map(|z| match z {
        CircleZero::Pole => Some(certify::zero_witness(&[Rational::zero(), one.clone()])),
        CircleZero::Rational(t) => Some(certify::zero_witness(&[one.clone(), t.clone()])),
        CircleZero::Enclosure { .. } => None,
    });
    if let Some(z) = certify::least_zero(exact) {
        return Ok(z);
    }
    let full = dehomogenize(w)?;
    let ray = |t: &Rational| -> Vec<Rational> {
        certify::primitive_ray(&[one.clone(), t.clone()]).into_iter().map(Rational::from_integer).collect()
    };
    let enclosures: Vec<_> = zeros
        .iter()
        .filter_map(|z| match z {
            CircleZero::Enclosure { lo, hi } => Some((lo.clone(), hi.clone())),
            _ => None,
        })
        .collect();
    for (lo, hi) in &enclosures {
        if full.eval(lo).is_positive() != full.eval(hi).is_positive() {
            return Ok(ZeroWitness::SignChange(ray(lo), ray(hi)));
        }
    }
    let (lo, hi) = enclosures.first().cloned().ok_or_else(|| Error::Internal("no root interval".into()))?;
    Ok(ZeroWitness::Interval { lo, hi })
}

#[cfg(test)]
mod tests;
