use rayon::prelude::*;
use serde::Serialize;

use super::{require_plane, to_float, ProbeConfig, ProbeReport};
use crate::criterion::OperatorSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunction {
    Zero,
    /// Indicator of the disc of radius 1/2.
    Disc,
    /// `exp(-4|x|^2)` cut off outside the unit disc.
    Gaussian,
    /// `(1-x^2)^2 (1-y^2)^2` on the unit square.
    TensorBump,
}

impl TestFunction {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            TestFunction::Zero => 0.0,
            TestFunction::Disc => f64::from(u8::from(x * x + y * y <= 0.25)),
            TestFunction::Gaussian => {
                let r2 = x * x + y * y;
                if r2 < 1.0 {
                    (-4.0 * r2).exp()
                } else {
                    0.0
                }
            }
            TestFunction::TensorBump => {
                if x.abs() < 1.0 && y.abs() < 1.0 {
                    (1.0 - x * x).powi(2) * (1.0 - y * y).powi(2)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "zero" => Some(TestFunction::Zero),
            "disc" => Some(TestFunction::Disc),
            "gaussian" => Some(TestFunction::Gaussian),
            "bump" | "tensor_bump" => Some(TestFunction::TensorBump),
            _ => None,
        }
    }
}

/// Uniform grid `[-half_width, half_width]^2` with `points` samples per side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridParams {
    pub half_width: f64,
    pub points: usize,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams { half_width: 2.0, points: 41 }
    }
}

impl GridParams {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    /// Same extent, twice the resolution.
    pub fn refined(&self) -> Self {
        GridParams { half_width: self.half_width, points: 2 * self.points - 1 }
    }
}

/// Samples on a centered uniform grid, row-major in `y` then `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub h: f64,
    pub half_width: f64,
    pub m: usize,
    pub samples: Vec<f64>,
}

impl GridFunction {
    pub fn sample(grid: GridParams, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if grid.points < 3 || grid.points.is_multiple_of(2) {
            return Err(Error::IndexOutOfRange("grid needs an odd number (>= 3) of points per side".into()));
        }
        let h = grid.spacing();
        let m = grid.points;
        let coord = |i: usize| -grid.half_width + i as f64 * h;
        let samples = (0..m * m).map(|k| f(coord(k % m), coord(k / m))).collect();
        Ok(GridFunction { h, half_width: grid.half_width, m, samples })
    }

    fn at(&self, i: isize, j: isize) -> f64 {
        let m = self.m as isize;
        if i < 0 || j < 0 || i >= m || j >= m {
            0.0
        } else {
            self.samples[(j * m + i) as usize]
        }
    }
}

/// `K(z) h^2` on every lattice offset inside the disc of radius `2 * half_width`,
/// sorted by decreasing `|z|`.
fn kernel_offsets(spec: &OperatorSpec, g: &GridFunction) -> Result<Vec<(isize, isize, f64, f64)>> {
    let num = to_float(&spec.expansion.numerator());
    let power = spec.expansion.max_degree() as i32 / 2 + 1;
    let reach = (g.m - 1) as isize;
    let radius = 2.0 * g.half_width;
    let mut out = Vec::new();
    for b in -reach..=reach {
        for a in -reach..=reach {
            if a == 0 && b == 0 {
                continue;
            }
            let z = [a as f64 * g.h, b as f64 * g.h];
            let r2 = z[0] * z[0] + z[1] * z[1];
            if r2.sqrt() > radius {
                continue;
            }
            out.push((a, b, r2.sqrt(), num.evaluate(&z)? / r2.powi(power) * g.h * g.h));
        }
    }
    out.sort_by(|x, y| y.2.total_cmp(&x.2).then((x.0, x.1).cmp(&(y.0, y.1))));
    Ok(out)
}

/// `(Tf, [T^ε f for ε in eps])` at every grid point. Each sum pairs `f(x+z)`
/// with `-f(x)`, so the lattice error in `∫ K = 0` over rings cancels.
fn truncations(spec: &OperatorSpec, g: &GridFunction, eps: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let offsets = kernel_offsets(spec, g)?;
    let mut eps_sorted: Vec<(usize, f64)> = eps.iter().copied().enumerate().collect();
    eps_sorted.sort_by(|a, b| b.1.total_cmp(&a.1));
    let m = g.m as isize;
    let per_point: Vec<(f64, Vec<f64>)> = (0..g.m * g.m)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k as isize % m, k as isize / m);
            let fx = g.at(i, j);
            let mut acc = 0.0;
            let mut truncated = vec![0.0; eps.len()];
            let mut next = 0;
            for &(a, b, r, kz) in &offsets {
                while next < eps_sorted.len() && r <= eps_sorted[next].1 {
                    truncated[eps_sorted[next].0] = acc;
                    next += 1;
                }
                acc += kz * (g.at(i + a, j + b) - fx);
            }
            while next < eps_sorted.len() {
                truncated[eps_sorted[next].0] = acc;
                next += 1;
            }
            (acc, truncated)
        })
        .collect();
    let tf = per_point.iter().map(|p| p.0).collect();
    let te = per_point.into_iter().map(|p| p.1).collect();
    Ok((tf, te))
}

/// Centered-square maximal function of `|v|` on the grid, via a summed-area table.
fn square_maximal(v: &[f64], m: usize) -> Vec<f64> {
    let mut sat = vec![0.0; (m + 1) * (m + 1)];
    for j in 0..m {
        for i in 0..m {
            sat[(j + 1) * (m + 1) + i + 1] =
                v[j * m + i].abs() + sat[j * (m + 1) + i + 1] + sat[(j + 1) * (m + 1) + i] - sat[j * (m + 1) + i];
        }
    }
    let rect = |i0: usize, j0: usize, i1: usize, j1: usize| {
        sat[j1 * (m + 1) + i1] - sat[j0 * (m + 1) + i1] - sat[j1 * (m + 1) + i0] + sat[j0 * (m + 1) + i0]
    };
    (0..m * m)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % m, k / m);
            let mut best: f64 = 0.0;
            for s in 0..m {
                let (i0, j0) = (i.saturating_sub(s), j.saturating_sub(s));
                let (i1, j1) = ((i + s + 1).min(m), (j + s + 1).min(m));
                let area = ((i1 - i0) * (j1 - j0)) as f64;
                best = best.max(rect(i0, j0, i1, j1) / area);
            }
            best
        })
        .collect()
}

/// `Tf` by the paired lattice sum (exposed for linearity checks).
pub fn pointwise_tf(spec: &OperatorSpec, f: &GridFunction) -> Result<Vec<f64>> {
    Ok(truncations(spec, f, &[])?.0)
}

/// `sup_x T*f(x) / (M(Tf)(x) + 1e-12)` on one grid.
pub fn pointwise_sup(spec: &OperatorSpec, f: TestFunction, grid: GridParams, eps: &[f64]) -> Result<f64> {
    require_plane(spec.n_vars())?;
    let g = GridFunction::sample(grid, |x, y| f.eval(x, y))?;
    let (tf, te) = truncations(spec, &g, eps)?;
    let maximal = square_maximal(&tf, g.m);
    let sup = te
        .iter()
        .zip(&maximal)
        .map(|(t, mx)| t.iter().fold(0.0f64, |a, v| a.max(v.abs())) / (mx + 1e-12))
        .fold(0.0, f64::max);
    Ok(sup)
}

/// Runs the pointwise ratio on `grid` and on its refinement; passes when the
/// two sups differ by less than the configured drift.
pub fn discrete_pointwise_probe(
    spec: &OperatorSpec,
    f: TestFunction,
    grid: GridParams,
    eps: &[f64],
    cfg: &ProbeConfig,
) -> Result<ProbeReport> {
    let coarse = pointwise_sup(spec, f, grid, eps)?;
    let fine = pointwise_sup(spec, f, grid.refined(), eps)?;
    let drift = if coarse > 0.0 { (fine - coarse).abs() / coarse } else { fine.abs() };
    let mut rep = ProbeReport::new("pointwise_ratio", cfg.grid_drift)
        .param("function", serde_json::to_value(f).expect("serializes"))
        .param("points", grid.points)
        .param("half_width", grid.half_width)
        .param("eps", eps.to_vec());
    rep.observe("sup_ratio", coarse);
    rep.observe("sup_ratio_refined", fine);
    rep.observe("drift", drift);
    rep.pass = coarse.is_finite() && fine.is_finite() && drift < cfg.grid_drift;
    Ok(rep)
}
