use std::f64::consts::PI;

use super::quad::gauss_on;
use super::{require_plane, ProbeConfig, ProbeReport};
use crate::constants::b_polynomial;
use crate::error::{Error, Result};
use crate::{FloatPoly, Poly};

/// `∫_B K(x-y) b_N(|y|) dy` with `K = p/|x|^(2+2N)`, tensor Gauss in polar
/// coordinates with `q` nodes per axis.
fn integral(p: &FloatPoly, b: &crate::constants::RadialPolynomial, x: [f64; 2], q: usize) -> Result<f64> {
    let half_d = p.degree() as i32 / 2 + 1;
    let (rho, wr) = gauss_on(q, 0.0, 1.0);
    let (th, wt) = gauss_on(q, 0.0, 2.0 * PI);
    let mut total = 0.0;
    for (r, w1) in rho.iter().zip(&wr) {
        let weight = b.eval(*r) * r * w1;
        let mut ring = 0.0;
        for (t, w2) in th.iter().zip(&wt) {
            let z = [x[0] - r * t.cos(), x[1] - r * t.sin()];
            let norm2 = z[0] * z[0] + z[1] * z[1];
            ring += w2 * p.evaluate(&z)? / norm2.powi(half_d);
        }
        total += weight * ring;
    }
    Ok(total)
}

pub fn verify_reconstruction(p: &Poly, x: [f64; 2]) -> Result<ProbeReport> {
    verify_reconstruction_with(p, x, &ProbeConfig::default())
}

/// Compares the averaged kernel against `K(x)` at an exterior point,
/// doubling the resolution until two successive values agree.
pub fn verify_reconstruction_with(p: &Poly, x: [f64; 2], cfg: &ProbeConfig) -> Result<ProbeReport> {
    require_plane(p.n_vars())?;
    if !p.is_harmonic() || p.degree() % 2 == 1 || p.degree() == 0 {
        return Err(Error::InvalidExpansion("kernel numerator must be harmonic of positive even degree".into()));
    }
    let norm = (x[0] * x[0] + x[1] * x[1]).sqrt();
    if norm < 1.1 {
        return Err(Error::IndexOutOfRange(format!("|x| = {norm} is inside 1.1")));
    }
    let nn = p.degree() / 2;
    let b = b_polynomial(2, nn)?;
    let kernel_text = p.to_string();
    let pf = super::to_float(p);
    let p = &pf;
    let target = p.evaluate(&x)? / norm.powi(2 + 2 * nn as i32);
    let scale = if target.abs() > 1e-12 { target.abs() } else { 1.0 };
    let mut q = 16;
    let mut prev = integral(p, &b, x, q)?;
    let mut last = f64::INFINITY;
    let (value, estimate) = loop {
        if 2 * q > cfg.max_quad_nodes {
            return Err(Error::QuadratureUnderResolved { estimate: last, tolerance: cfg.reconstruction_tol });
        }
        q *= 2;
        let cur = integral(p, &b, x, q)?;
        last = (cur - prev).abs() / scale;
        prev = cur;
        // successive values must agree well inside the tolerance
        if last < cfg.reconstruction_tol * 1e-2 {
            break (cur, last);
        }
    };
    let err = (value - target).abs() / scale;
    let mut rep = ProbeReport::new("kernel_reconstruction", cfg.reconstruction_tol)
        .param("kernel", kernel_text)
        .param("x", vec![x[0], x[1]])
        .param("order", nn);
    rep.observe("integral", value);
    rep.observe("kernel", target);
    rep.observe("relative_error", err);
    rep.observe("quadrature_estimate", estimate);
    rep.observe("nodes_per_axis", q as f64);
    rep.pass = err <= cfg.reconstruction_tol;
    Ok(rep)
}
