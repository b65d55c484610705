//! Closed-form constants: fundamental solutions of `Δ^N`, the polynomial
//! `A` matching them to order `2N-1` on the unit sphere, the density `b_N`,
//! and the series coefficients of `Ŝχ_B`.

mod radial_fn;
mod series;

#[cfg(test)]
mod tests;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{factorial, falling, gamma_half, gamma_of, rat, rat_int, PiScalar, Rational};
use crate::Poly;

pub use radial_fn::RadialFn;
pub use series::{
    a2p_closed, a2p_functional, a2p_triple_sum, bessel_series_coeff, c2j, c2j_closed, c2j_summed, c_lj, c_ljk,
    c_ljk_derived, s_closed_form, s_polynomial, A2pFunctional, SExpansion,
};

/// Volume of the unit ball in `R^n`.
pub fn ball_volume(n: u32) -> PiScalar {
    PiScalar::pi_pow(n as i32).checked_div(&gamma_half(n + 2)).expect("Gamma is nonzero")
}

/// Surface area of the unit sphere in `R^n`.
pub fn sphere_area(n: u32) -> PiScalar {
    ball_volume(n).scale(&rat_int(n as i64))
}

fn int(v: &num_bigint::BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

fn fact(k: u64) -> Rational {
    int(&factorial(k))
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pow4(k: u32) -> Rational {
    num_traits::pow(rat_int(4), k as usize)
}

fn check_dims(n: u32, nn: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("dimension {n} < 2")));
    }
    if nn < 1 {
        return Err(Error::IndexOutOfRange("order N must be at least 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    OddDimension,
    EvenLowOrder,
    EvenHighOrder,
    Plane,
}

/// `E_N = α |x|^(2N-n) + β |x|^(2N-n) log |x|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalConstants {
    pub n: u32,
    pub order: u32,
    pub alpha: PiScalar,
    pub beta: PiScalar,
    pub case: CaseTag,
}

/// `S_L = Σ_{k=1}^{L} 1/(2k) + Σ_{k=n/2}^{L+n/2-1} 1/(2k)` (even `n`).
fn harmonic_shift(n: u32, l: u32) -> Rational {
    let h = n / 2;
    let mut s = Rational::zero();
    for k in 1..=l {
        s += rat(1, 2 * k as i64);
    }
    for k in h..(l + h) {
        s += rat(1, 2 * k as i64);
    }
    s
}

pub fn fundamental_constants(n: u32, nn: u32) -> Result<FundamentalConstants> {
    check_dims(n, nn)?;
    let omega = sphere_area(n);
    let common = pow4(nn - 1) * fact(nn as u64 - 1);
    let two_minus_n = rat_int(2 - n as i64);
    // 1 / (r ω_n)
    let inv = |r: Rational| -> PiScalar { PiScalar::from_rational(r.recip()).checked_div(&omega).expect("nonzero") };
    let half = n / 2;
    let (alpha, beta, case) = if n % 2 == 1 {
        let nh = rat(n as i64, 2);
        let num = gamma_of(&(rat_int(2) - &nh))?;
        let den = gamma_of(&(rat_int(nn as i64 + 1) - &nh))?.scale(&(&common * &two_minus_n)) * omega.clone();
        (num.checked_div(&den)?, PiScalar::zero(), CaseTag::OddDimension)
    } else if n == 2 {
        let beta = inv(rat_int(2) * pow4(nn - 1) * fact(nn as u64 - 1) * fact(nn as u64 - 1));
        let alpha = beta.scale(&(rat_int(2) * harmonic_shift(2, nn - 1)));
        (alpha, beta, CaseTag::Plane)
    } else if nn < half {
        let r = sign(nn as i64 - 1) * fact((half - nn - 1) as u64) / (&common * fact(half as u64 - 2) * &two_minus_n);
        (inv(r.recip()), PiScalar::zero(), CaseTag::EvenLowOrder)
    } else {
        // The sign here makes Δ E_N - E_(N-1) a polynomial (see tests).
        let d = sign(half as i64 + 1) * fact((nn - half) as u64) * &common * fact(half as u64 - 2) * &two_minus_n;
        let beta = -inv(d);
        let alpha = beta.scale(&(rat_int(2) * harmonic_shift(n, nn - half)));
        (alpha, beta, CaseTag::EvenHighOrder)
    };
    Ok(FundamentalConstants { n, order: nn, alpha, beta, case })
}

impl FundamentalConstants {
    /// `E_N` as a function of `t = |x|^2`.
    pub fn as_radial_fn(&self) -> RadialFn {
        let e = rat(2 * self.order as i64 - self.n as i64, 2);
        let mut f = RadialFn::term(self.alpha.clone(), e.clone(), 0);
        if !self.beta.is_zero() {
            f = f.sub(&RadialFn::term(-self.beta.clone(), e, 1));
        }
        f
    }
}

/// Polynomial `Σ c_k t^k` in `t = |x|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPolynomial {
    pub coeffs: Vec<PiScalar>,
}

impl RadialPolynomial {
    /// Laplacian in `R^n`, using `Δ t^k = 4k(n/2+k-1) t^(k-1)`.
    pub fn laplacian(&self, n: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let k = k as i64;
                c.scale(&(rat_int(4 * k) * (rat(n as i64, 2) + rat_int(k - 1))))
            })
            .collect();
        RadialPolynomial { coeffs }
    }

    /// Homogeneous pieces `c_k |x|^(2k)` in `n` variables.
    pub fn pieces(&self, n: u32) -> Vec<Poly> {
        self.coeffs.iter().enumerate().map(|(k, c)| Poly::radial(n as usize, k as u32).scale(c)).collect()
    }

    pub fn eval(&self, r: f64) -> f64 {
        let t = r * r;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64())
    }
}

/// `A_0, ..., A_(2N-1)`: the polynomial in `|x|^2` whose first `2N-1`
/// derivatives agree with `E_N` on the unit sphere. Solved from the Taylor
/// conditions and cross-checked against the closed form for `L > N`.
pub fn a_coefficients(n: u32, nn: u32) -> Result<Vec<PiScalar>> {
    let e = fundamental_constants(n, nn)?.as_radial_fn();
    let size = 2 * nn as usize;
    let mut rhs = Vec::with_capacity(size);
    let mut f = e;
    for _ in 0..size {
        rhs.push(f.at_one());
        f = f.derivative();
    }
    let m: Vec<Vec<Rational>> =
        (0..size).map(|k| (0..size).map(|l| falling(&rat_int(l as i64), k as u64)).collect()).collect();
    let a = linalg::solve(m, rhs)?;
    for l in nn + 1..2 * nn {
        if a[l as usize] != a_closed(n, nn, l)? {
            return Err(Error::Internal(format!("A_{l} disagrees with its closed form (n={n}, N={nn})")));
        }
    }
    Ok(a)
}

/// Closed form of `A_L` for `N < L < 2N`.
pub fn a_closed(n: u32, nn: u32, l: u32) -> Result<PiScalar> {
    check_dims(n, nn)?;
    if l <= nn || l >= 2 * nn {
        return Err(Error::IndexOutOfRange(format!("closed form of A_{l} needs N < L < 2N")));
    }
    let nh = rat(n as i64, 2);
    let num = sign((nn + l) as i64) * binom_rat(&(rat_int(nn as i64 - 1) + &nh), nn as i64 - 1);
    let den = pow4(nn) * (rat_int(l as i64 - nn as i64) + &nh) * fact((2 * nn - l - 1) as u64) * fact(l as u64);
    PiScalar::from_rational(num / den).checked_div(&ball_volume(n))
}

fn binom_rat(a: &Rational, k: i64) -> Rational {
    crate::scalar::binom(a, k)
}

/// `b_N = Δ^N Σ A_L |x|^(2L)`, a polynomial of degree `N-1` in `|x|^2`.
pub fn b_polynomial(n: u32, nn: u32) -> Result<RadialPolynomial> {
    let mut p = RadialPolynomial { coeffs: a_coefficients(n, nn)? };
    for _ in 0..nn {
        p = p.laplacian(n);
    }
    Ok(p)
}

/// `Δ^j |x|^(2k)` coefficient: `4^j j! k!/(k-j)! C(n/2+k-1, j)`.
pub fn radial_laplacian_power(n: u32, j: u32, k: u32) -> Rational {
    if j > k {
        return Rational::zero();
    }
    pow4(j) * fact(j as u64) * falling(&rat_int(k as i64), j as u64)
        * binom_rat(&(rat(n as i64, 2) + rat_int(k as i64 - 1)), j as i64)
}

/// `Δ E_N - E_(N-1)` (or `Δ E_1` for `N = 1`); a polynomial in `|x|^2`
/// exactly when the constants are right.
pub fn fundamental_defect(n: u32, nn: u32) -> Result<RadialFn> {
    let lap = fundamental_constants(n, nn)?.as_radial_fn().laplacian(n);
    if nn == 1 {
        return Ok(lap);
    }
    Ok(lap.sub(&fundamental_constants(n, nn - 1)?.as_radial_fn()))
}
