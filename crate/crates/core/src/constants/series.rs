//! The polynomial `S` and the power series of `Ŝχ_B` in `r = |ξ|`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{a_coefficients, ball_volume, binom_rat, check_dims, fact, pow4, sign};
use crate::criterion::{assemble_multiplier, OperatorSpec};
use crate::error::{Error, Result};
use crate::scalar::{gamma_j, gamma_of, pow2_half, rat, rat_int, PiScalar, Rational};
use crate::Poly;

/// `S = -Q(∂) Σ A_L |x|^(2L)` split into homogeneous pieces of degree
/// `2, 4, ..., 2N-2` (the pieces with `L <= N` vanish).
#[derive(Debug, Clone, PartialEq)]
pub struct SExpansion {
    pub n_vars: usize,
    pub order: u32,
    /// `pieces[s-1]` has degree `2s`.
    pub pieces: Vec<Poly>,
}

impl SExpansion {
    pub fn evaluate_float(&self, x: &[f64]) -> Result<f64> {
        self.pieces.iter().try_fold(0.0, |acc, p| Ok(acc + p.evaluate_float(x)?))
    }
}

pub fn s_polynomial(spec: &OperatorSpec) -> Result<SExpansion> {
    let n = spec.n_vars();
    let nn = spec.expansion.max_degree() / 2;
    let q = assemble_multiplier(spec).numerator;
    let a = a_coefficients(n as u32, nn)?;
    let mut pieces = Vec::with_capacity(nn as usize - 1);
    for (l, al) in a.iter().enumerate() {
        let l = l as u32;
        let piece = q.apply_diff(&Poly::radial(n, l))?.scale(&-al.clone());
        if l <= nn {
            if !piece.is_zero() {
                return Err(Error::Internal(format!("Q(∂)|x|^{} should vanish", 2 * l)));
            }
            continue;
        }
        pieces.push(piece);
    }
    Ok(SExpansion { n_vars: n, order: nn, pieces })
}

/// `c_{l,j}`: coefficient of `P_{2j} |x|^(2(l-N-j))` in `S`.
pub fn c_lj(n: u32, nn: u32, l: u32, j: u32) -> Result<PiScalar> {
    check_dims(n, nn)?;
    if l <= nn || l >= 2 * nn || j == 0 || j > nn || l < nn + j {
        return Ok(PiScalar::zero());
    }
    let a = super::a_closed(n, nn, l)?;
    let r = pow4(nn) * fact(l as u64) * fact((nn - j) as u64) / fact((l - nn - j) as u64)
        * binom_rat(&(rat_int(l as i64 - 1) + rat(n as i64, 2)), (nn - j) as i64);
    Ok(-(a * gamma_j(n, 2 * j)?).scale(&r))
}

/// `S` rebuilt from `c_{l,j}` and the harmonic components.
pub fn s_closed_form(spec: &OperatorSpec) -> Result<SExpansion> {
    let n = spec.n_vars();
    let nn = spec.expansion.max_degree() / 2;
    let mut pieces = Vec::new();
    for s in 1..nn {
        let mut piece = Poly::zero(n, 2 * s);
        for &(deg, ref p) in spec.expansion.components() {
            let j = deg / 2;
            if j > s {
                continue;
            }
            let c = c_lj(n as u32, nn, nn + s, j)?;
            let term = p.checked_mul(&Poly::radial(n, s - j))?.scale(&c);
            piece = piece.checked_add(&term)?;
        }
        pieces.push(piece);
    }
    Ok(SExpansion { n_vars: n, order: nn, pieces })
}

/// `c_{l,j,k}` in closed form.
pub fn c_ljk(n: u32, nn: u32, l: u32, j: u32, k: u32) -> Result<PiScalar> {
    check_dims(n, nn)?;
    if l <= nn || l >= 2 * nn || j == 0 || l < nn + j + k {
        return Ok(PiScalar::zero());
    }
    let nh = rat(n as i64, 2);
    let (l_, j_, k_, n_) = (l as i64, j as i64, k as i64, nn as i64);
    let num = -sign(k_)
        * binom_rat(&(rat_int(n_ - 1) + &nh), n_ - 1)
        * num_traits::pow(rat_int(2), k as usize)
        * fact((nn - j) as u64)
        * binom_rat(&(rat_int(l_ - 1) + &nh), n_ - j_)
        * binom_rat(&(&nh + rat_int(j_ + l_ - n_ - 1)), k_);
    let den = (rat_int(l_ - n_) + &nh) * fact((2 * nn - l - 1) as u64) * fact((l - nn - j - k) as u64);
    (gamma_j(n, 2 * j)?.scale(&(num / den))).checked_div(&ball_volume(n))
}

/// `c_{l,j,k}` from `c_{l,j}` by expanding `P_{2j}(∂)`-type derivatives of
/// the Bessel kernel term by term.
pub fn c_ljk_derived(n: u32, nn: u32, l: u32, j: u32, k: u32) -> Result<PiScalar> {
    if l < nn + j + k {
        return Ok(PiScalar::zero());
    }
    let m = (l - nn - j) as u64;
    let r = sign((l - nn + k) as i64)
        * num_traits::pow(rat_int(2), k as usize)
        * fact(m)
        / fact(m - k as u64)
        * binom_rat(&(rat(n as i64, 2) + rat_int((j + l - nn) as i64 - 1)), k as i64);
    Ok(c_lj(n, nn, l, j)?.scale(&r))
}

/// Coefficient of `r^(2i)` in `J_q(r)/r^q`:
/// `(-1)^i / (i! Γ(q+i+1) 2^(2i+q))`.
pub fn bessel_series_coeff(q: &Rational, i: u32) -> Result<PiScalar> {
    let twice = q * rat_int(2);
    if !twice.is_integer() || q < &Rational::zero() {
        return Err(Error::Unsupported(format!("Bessel order {q}")));
    }
    let g = gamma_of(&(q + rat_int(i as i64 + 1)))?;
    let p2 = pow2_half(4 * i as i64 + twice.to_integer().try_into().unwrap_or(0i64));
    let den = (g * p2).scale(&fact(i as u64));
    PiScalar::from_rational(sign(i as i64)).checked_div(&den)
}

/// `C_{2j} = Σ_l c_{l,j,l-N-j} G_{n/2+l-N+j}(0)`.
pub fn c2j_summed(n: u32, nn: u32, j: u32) -> Result<PiScalar> {
    let mut total = PiScalar::zero();
    for l in nn + j..2 * nn {
        let k = l - nn - j;
        let q = rat(n as i64, 2) + rat_int((l - nn + j) as i64);
        total += c_ljk(n, nn, l, j, k)? * bessel_series_coeff(&q, 0)?;
    }
    Ok(total)
}

/// `C_{2j} = -2^(-n/2) (-1)^j / (j 4^j Γ(2j+n/2))`; independent of `N`.
pub fn c2j_closed(n: u32, j: u32) -> Result<PiScalar> {
    if j == 0 {
        return Err(Error::IndexOutOfRange("C_0 is not defined".into()));
    }
    let pref = PiScalar::pi_pow(n as i32)
        .checked_div(&(ball_volume(n) * pow2_half(n as i64) * gamma_of(&rat(n as i64 + 2, 2))?))?;
    let den = gamma_of(&(rat(n as i64, 2) + rat_int(2 * j as i64)))?.scale(&(rat_int(j as i64) * pow4(j)));
    Ok(-pref.checked_div(&den)?.scale(&sign(j as i64)))
}

/// Both evaluations of `C_{2j}`: `(summed, closed)`.
pub fn c2j(n: u32, nn: u32, j: u32) -> Result<(PiScalar, PiScalar)> {
    if j == 0 || j >= nn {
        return Err(Error::IndexOutOfRange(format!("C_{} needs 1 <= j < N", 2 * j)));
    }
    Ok((c2j_summed(n, nn, j)?, c2j_closed(n, j)?))
}

/// `a_{2p}(ξ) = Σ_j μ_j P_{2j}(ξ)`, the `r^(2p)` coefficient of `Ŝχ_B(rξ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct A2pFunctional {
    pub p: u32,
    /// `j -> μ_j(p)`, only nonzero entries.
    pub mu: BTreeMap<u32, PiScalar>,
}

impl A2pFunctional {
    /// `Σ_j μ_j P_{2j}(ξ)` given the harmonic components by degree.
    pub fn evaluate_float(&self, components: &[(u32, Poly)], xi: &[f64]) -> Result<f64> {
        let mut v = 0.0;
        for (deg, p) in components {
            if let Some(mu) = self.mu.get(&(deg / 2)) {
                v += mu.to_f64() * p.evaluate_float(xi)?;
            }
        }
        Ok(v)
    }
}

/// `μ_j(p)` from the defining triple sum, any `p`.
pub fn a2p_triple_sum(n: u32, nn: u32, p: u32) -> Result<BTreeMap<u32, PiScalar>> {
    check_dims(n, nn)?;
    let mut mu = BTreeMap::new();
    for j in 1..nn {
        let mut total = PiScalar::zero();
        for s in j..nn {
            for k in 0..=(s - j) {
                let Some(i) = (p + k).checked_sub(s) else { continue };
                let q = rat(n as i64, 2) + rat_int(2 * s as i64 - k as i64);
                total += c_ljk(n, nn, nn + s, j, k)? * bessel_series_coeff(&q, i)?;
            }
        }
        if !total.is_zero() {
            mu.insert(j, total);
        }
    }
    Ok(mu)
}

/// `μ_j(p)` in closed form, valid for `p < N` (and then independent of `N`).
pub fn a2p_closed(n: u32, p: u32) -> Result<BTreeMap<u32, PiScalar>> {
    let nh = rat(n as i64, 2);
    let pref = PiScalar::pi_pow(n as i32).checked_div(
        &(ball_volume(n) * pow2_half(n as i64 + 4 * p as i64) * gamma_of(&(&nh + rat_int(1)))?)
            .scale(&fact(p as u64)),
    )?;
    let mut mu = BTreeMap::new();
    for j in 1..=p {
        let mut sum = Rational::zero();
        for i in 0..=(p - j) {
            let b = binom_rat(&(&nh + rat_int((p + j) as i64 - i as i64 - 1)), j as i64);
            sum += sign(i as i64) / (fact(i as u64) * fact((p - i - j) as u64) * fact(j as u64) * b);
        }
        let g = gamma_of(&rat_int(j as i64))?.checked_div(&gamma_of(&(&nh + rat_int(j as i64)))?)?;
        let v = -(pref.clone() * g).scale(&(sign(j as i64) * sum));
        if !v.is_zero() {
            mu.insert(j, v);
        }
    }
    Ok(mu)
}

/// `a_{2p}` from the triple sum, checked against the closed form when `p < N`.
pub fn a2p_functional(n: u32, nn: u32, p: u32) -> Result<A2pFunctional> {
    let mu = a2p_triple_sum(n, nn, p)?;
    if p < nn && mu != a2p_closed(n, p)? {
        return Err(Error::Internal(format!("a_{} closed form mismatch (n={n}, N={nn})", 2 * p)));
    }
    Ok(A2pFunctional { p, mu })
}
