//! Floating-point experiments in the plane: reconstruction of the kernel from
//! `b_N`, the multiplier inequality, zero sets, the pointwise inequality on a
//! grid, and growth of `b_N`.

mod growth;
mod pointwise;
mod quad;
mod reconstruct;
mod scan;


use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub use growth::bn_growth_table;
pub use pointwise::{discrete_pointwise_probe, pointwise_sup, pointwise_tf, GridFunction, GridParams, TestFunction};
pub use quad::gauss_legendre;
pub use reconstruct::{verify_reconstruction, verify_reconstruction_with};
pub use scan::{multiplier_ratio_scan, series_at, zero_sets_check, SeriesEvaluator};

/// Tolerances and defaults for every probe, in one place.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeConfig {
    /// Relative error allowed in the kernel reconstruction.
    pub reconstruction_tol: f64,
    /// Largest per-axis Gauss resolution tried before giving up.
    pub max_quad_nodes: usize,
    /// A series value above this at a zero of `Q` witnesses failure.
    pub series_floor: f64,
    /// Allowed relative drift of the multiplier ratio when directions double.
    pub scan_drift: f64,
    /// Allowed relative drift of the pointwise ratio when the grid is refined.
    pub grid_drift: f64,
    /// Target bound for the neglected tail of the power series.
    pub tail_tol: f64,
    pub scan_directions: usize,
    pub scan_radii: Vec<f64>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            reconstruction_tol: 1e-6,
            max_quad_nodes: 256,
            series_floor: 1e-8,
            scan_drift: 0.05,
            grid_drift: 0.25,
            tail_tol: 1e-12,
            scan_directions: 1000,
            scan_radii: vec![0.25, 0.5, 1.0, 2.0, 4.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub quantity: String,
    pub params: BTreeMap<String, Value>,
    pub observed: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl ProbeReport {
    fn new(quantity: &str, tolerance: f64) -> Self {
        ProbeReport {
            quantity: quantity.into(),
            params: BTreeMap::new(),
            observed: BTreeMap::new(),
            tolerance,
            pass: false,
            table: None,
        }
    }

    fn param(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.params.insert(k.into(), v.into());
        self
    }

    fn observe(&mut self, k: &str, v: f64) {
        self.observed.insert(k.into(), v);
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn require_plane(n: usize) -> crate::Result<()> {
    if n != 2 {
        return Err(crate::Error::Unsupported(format!("probes run in the plane only, got n = {n}")));
    }
    Ok(())
}

fn to_float(p: &crate::Poly) -> crate::FloatPoly {
    p.map_coeffs(|c| c.to_f64())
}
