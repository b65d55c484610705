use super::{ProbeReport, Table};
use crate::constants::b_polynomial;
use crate::error::{Error, Result};

const SAMPLES: usize = 10_000;

/// `sup_{0<=|y|<=1} |b_N(|y|)|` for each `N`, by dense sampling of the exact
/// radial polynomial. Passes when the last sup exceeds the first.
pub fn bn_growth_table(n: u32, orders: &[u32]) -> Result<ProbeReport> {
    if orders.is_empty() || orders.iter().any(|&k| k == 0 || k > 12) {
        return Err(Error::IndexOutOfRange("orders must lie in 1..=12".into()));
    }
    let mut rows = Vec::with_capacity(orders.len());
    for &nn in orders {
        let b = b_polynomial(n, nn)?;
        let coeffs: Vec<f64> = b.coeffs.iter().map(|c| c.to_f64()).collect();
        let sup = (0..=SAMPLES)
            .map(|i| {
                let t = i as f64 / SAMPLES as f64;
                coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c).abs()
            })
            .fold(0.0, f64::max);
        rows.push(vec![nn as f64, sup]);
    }
    let first = rows[0][1];
    let last = rows[rows.len() - 1][1];
    let mut rep = ProbeReport::new("bn_growth", 0.0).param("n", n).param("orders", orders.to_vec());
    rep.observe("first_sup", first);
    rep.observe("last_sup", last);
    rep.pass = rows.len() == 1 || last > first;
    rep.table = Some(Table { columns: vec!["N".into(), "sup_abs_b".into()], rows });
    Ok(rep)
}
