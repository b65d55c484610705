use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{require_plane, to_float, ProbeConfig, ProbeReport, Table};
use crate::constants::{a2p_functional, c_ljk};
use crate::criterion::{
    assemble_multiplier, check_condition_iv, circle_zeros, count_roots_in, dehomogenize, rational_part, reduce,
    refine, CircleZero, OperatorSpec, Reduction, Verdict,
};
use crate::error::Result;
use crate::scalar::{rat, Rational};
use crate::FloatPoly;

/// `Ŝχ_B(rξ) = Σ_p r^(2p) Σ_j μ_j(p) P_{2j}(ξ)` truncated where the tail
/// bound drops below the requested tolerance for every `r <= r_max`.
#[derive(Debug, Clone)]
pub struct SeriesEvaluator {
    order: u32,
    components: Vec<(u32, FloatPoly)>,
    /// `mu[p-1][j]`
    mu: Vec<BTreeMap<u32, f64>>,
    pub tail_bound: f64,
}

fn fact_f64(k: u32) -> f64 {
    (1..=k).fold(1.0, |a, i| a * i as f64)
}

/// `|coefficient of r^(2i) in J_q(r)/r^q|` for integer `q`.
fn bessel_mag(q: u32, i: u32) -> f64 {
    1.0 / (fact_f64(i) * fact_f64(q + i) * 2f64.powi((2 * i + q) as i32))
}

impl SeriesEvaluator {
    pub fn new(spec: &OperatorSpec, r_max: f64, tail_tol: f64) -> Result<Self> {
        require_plane(spec.n_vars())?;
        let nn = spec.expansion.max_degree() / 2;
        let components: Vec<(u32, FloatPoly)> =
            spec.expansion.components().iter().map(|(d, p)| (d / 2, to_float(p))).collect();
        let norms: BTreeMap<u32, f64> =
            components.iter().map(|(j, p)| (*j, p.terms().map(|(_, c)| c.abs()).sum())).collect();
        // |c_{N+s,j,k}| weighted by ||P_{2j}||
        let mut weights = Vec::new();
        for s in 1..nn {
            for j in 1..=s {
                let Some(norm) = norms.get(&j) else { continue };
                for k in 0..=(s - j) {
                    let c = c_ljk(2, nn, nn + s, j, k)?.to_f64().abs();
                    weights.push((s, k, c * norm));
                }
            }
        }
        let bound_at = |p: u32| -> f64 {
            weights.iter().filter(|(s, k, _)| p + k >= *s).map(|(s, k, w)| w * bessel_mag(1 + 2 * s - k, p + k - s)).sum()
        };
        let r2 = r_max * r_max;
        let mut cut = nn.saturating_sub(1).max(1);
        let tail_bound = loop {
            // past the cutoff every Bessel index is at least cut-N+2, so
            // consecutive terms shrink by at least rho
            let i0 = (cut + 2).saturating_sub(nn) as f64 + 1.0;
            let rho = r2 / (4.0 * i0 * (i0 + 1.0));
            if rho < 0.5 {
                let tail = bound_at(cut + 1) * r2.powi(cut as i32 + 1) / (1.0 - rho);
                if tail < tail_tol {
                    break tail;
                }
            }
            cut += 1;
        };
        let mut mu = Vec::with_capacity(cut as usize);
        for p in 1..=cut {
            let f = a2p_functional(2, nn, p)?;
            mu.push(f.mu.iter().map(|(j, v)| (*j, v.to_f64())).collect());
        }
        Ok(SeriesEvaluator { order: nn, components, mu, tail_bound })
    }

    pub fn cutoff(&self) -> u32 {
        self.mu.len() as u32
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The series with `P_{2j}(ξ)` replaced by `values[j]`.
    pub fn eval_with(&self, values: &BTreeMap<u32, f64>, r: f64, terms: Option<u32>) -> f64 {
        let r2 = r * r;
        let mut pow = 1.0;
        let mut total = 0.0;
        for row in self.mu.iter().take(terms.unwrap_or(u32::MAX) as usize) {
            pow *= r2;
            let a: f64 = row.iter().filter_map(|(j, m)| values.get(j).map(|v| m * v)).sum();
            total += a * pow;
        }
        total
    }

    pub fn component_values(&self, xi: &[f64]) -> Result<BTreeMap<u32, f64>> {
        self.components.iter().map(|(j, p)| Ok((*j, p.evaluate(xi)?))).collect()
    }

    pub fn eval(&self, xi: &[f64], r: f64) -> Result<f64> {
        Ok(self.eval_with(&self.component_values(xi)?, r, None))
    }
}

/// `Ŝχ_B(rξ)` for a unit vector `ξ`.
pub fn series_at(spec: &OperatorSpec, xi: [f64; 2], r: f64) -> Result<f64> {
    SeriesEvaluator::new(spec, r.max(1.0), ProbeConfig::default().tail_tol)?.eval(&xi, r)
}

fn direction(i: usize, count: usize) -> [f64; 2] {
    let t = PI * (i as f64 + 0.5) / count as f64;
    [t.cos(), t.sin()]
}

/// Largest `|Ŝχ_B(rξ)| / |Q(ξ)|` over `count` directions in `[0, π)` and the radii.
fn sup_ratio(ev: &SeriesEvaluator, q: &FloatPoly, count: usize, radii: &[f64]) -> Result<(f64, Vec<Vec<f64>>)> {
    let rows: Vec<Vec<f64>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let xi = direction(i, count);
            let vals = ev.component_values(&xi)?;
            let denom = q.evaluate(&xi)?.abs();
            let mut row = vec![PI * (i as f64 + 0.5) / count as f64];
            row.extend(radii.iter().map(|&r| ev.eval_with(&vals, r, None).abs() / denom));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let sup = rows.iter().flat_map(|r| r[1..].iter().copied()).fold(0.0, f64::max);
    Ok((sup, rows))
}

/// Approximate unit vectors for the zeros of `Q` on the circle.
fn zero_directions(w: &crate::RatPoly) -> Result<Vec<[f64; 2]>> {
    let f = dehomogenize(w)?.squarefree();
    let width = rat(1, 1 << 40) * rat(1, 1 << 20);
    circle_zeros(w)?
        .into_iter()
        .map(|z| {
            Ok(match z {
                CircleZero::Enclosure { lo, hi } => {
                    let (lo, hi) = refine(&f, &lo, &hi, &width);
                    CircleZero::Enclosure { lo, hi }.unit_f64()
                }
                other => other.unit_f64(),
            })
        })
        .collect()
}

/// Checks the multiplier inequality: for controlled operators the ratio
/// `|Ŝχ_B(rξ)| / |Q(ξ)|` stays bounded and stable when the direction set
/// doubles; otherwise some zero of `Q` carries a nonzero series value.
pub fn multiplier_ratio_scan(spec: &OperatorSpec, cfg: &ProbeConfig) -> Result<ProbeReport> {
    require_plane(spec.n_vars())?;
    let verdict = check_condition_iv(spec, 100_000)?;
    let r_max = cfg.scan_radii.iter().copied().fold(1.0, f64::max);
    let ev = SeriesEvaluator::new(spec, r_max, cfg.tail_tol)?;
    let q_exact = assemble_multiplier(spec).numerator;
    let q = to_float(&q_exact);
    let mut rep = ProbeReport::new("multiplier_ratio", cfg.scan_drift)
        .param("status", verdict.status())
        .param("directions", cfg.scan_directions)
        .param("radii", cfg.scan_radii.clone());
    rep.observe("series_terms", ev.cutoff() as f64);
    rep.observe("tail_bound", ev.tail_bound);

    let (sup1, rows) = sup_ratio(&ev, &q, cfg.scan_directions, &cfg.scan_radii)?;
    let (sup2, _) = sup_ratio(&ev, &q, 2 * cfg.scan_directions, &cfg.scan_radii)?;
    let drift = if sup1 > 0.0 { (sup2 - sup1).abs() / sup1 } else { (sup2 - sup1).abs() };
    rep.observe("sup_ratio", sup1);
    rep.observe("sup_ratio_doubled", sup2);
    rep.observe("drift", drift);
    let mut columns = vec!["theta".to_string()];
    columns.extend(cfg.scan_radii.iter().map(|r| format!("ratio_r{r}")));
    rep.table = Some(Table { columns, rows });

    let w = rational_part(&q_exact)?;
    let zeros = zero_directions(&w)?;
    let mut zero_series: f64 = 0.0;
    let mut zero_q: f64 = 0.0;
    for xi in &zeros {
        zero_series = zero_series.max(ev.eval(xi, 1.0)?.abs());
        zero_q = zero_q.max(q.evaluate(xi)?.abs());
    }
    rep.observe("zero_count", zeros.len() as f64);
    rep.observe("zero_series_max", zero_series);
    rep.observe("zero_multiplier_max", zero_q);

    rep.pass = match &verdict {
        Verdict::Controlled { .. } => sup1.is_finite() && sup2.is_finite() && drift < cfg.scan_drift,
        Verdict::NotControlled { .. } => {
            if let Reduction::Divisible { riesz, w, .. } = reduce(spec)? {
                rep.observe("reduced_series_max", reduced_series_max(spec, &ev, &riesz, &w)?);
            }
            zero_series > cfg.series_floor
        }
        Verdict::Undecided { .. } => false,
    };
    Ok(rep)
}

/// After dividing out the leading Riesz factor, the series built from the
/// quotients `P_{2j}/P_{2j0}` at the zeros of the reduced multiplier.
fn reduced_series_max(
    spec: &OperatorSpec,
    ev: &SeriesEvaluator,
    riesz: &crate::Poly,
    w: &crate::RatPoly,
) -> Result<f64> {
    let quotients: Vec<(u32, FloatPoly)> = spec
        .expansion
        .components()
        .iter()
        .filter_map(|(d, p)| p.try_divide(riesz).ok().flatten().map(|q| (d / 2, to_float(&q))))
        .collect();
    let mut best: f64 = 0.0;
    for xi in zero_directions(w)? {
        let vals: BTreeMap<u32, f64> =
            quotients.iter().map(|(j, q)| Ok((*j, q.evaluate(&xi)?))).collect::<Result<_>>()?;
        best = best.max(ev.eval_with(&vals, 1.0, None).abs());
    }
    Ok(best)
}

/// Every zero of `Q` on the circle must annihilate every `P_{2j}`. Rational
/// zeros are checked by exact evaluation, irrational ones by locating a
/// common root of `Q` and `P_{2j}` inside the isolating interval.
pub fn zero_sets_check(spec: &OperatorSpec) -> Result<ProbeReport> {
    require_plane(spec.n_vars())?;
    let w = rational_part(&assemble_multiplier(spec).numerator)?;
    let f = dehomogenize(&w)?.squarefree();
    let comps: Vec<crate::RatPoly> =
        spec.expansion.components().iter().map(|(_, p)| rational_part(p)).collect::<Result<_>>()?;
    let zeros = circle_zeros(&w)?;
    let (mut exact, mut failures, mut checks) = (0usize, 0usize, 0usize);
    for z in &zeros {
        for p in &comps {
            checks += 1;
            let vanishes = match z {
                CircleZero::Pole => {
                    exact += 1;
                    p.coeff(&[0, p.degree()]).is_zero()
                }
                CircleZero::Rational(t) => {
                    exact += 1;
                    p.evaluate_exact(&[Rational::one(), t.clone()])?.is_zero()
                }
                CircleZero::Enclosure { lo, hi } => {
                    let g = f.gcd(&dehomogenize(p)?);
                    count_roots_in(&g, lo, hi) == 1
                }
            };
            if !vanishes {
                failures += 1;
            }
        }
    }
    let mut rep = ProbeReport::new("zero_sets", 0.0).param("components", comps.len());
    rep.observe("zeros", zeros.len() as f64);
    rep.observe("checks", checks as f64);
    rep.observe("exact_checks", exact as f64);
    rep.observe("failures", failures as f64);
    rep.pass = failures == 0;
    Ok(rep)
}
