use std::collections::BTreeMap;

use cz_core::constants::{
    a2p_functional, a_coefficients, b_polynomial, c2j, c_lj, fundamental_constants, FundamentalConstants,
};
use cz_core::criterion::{assemble_multiplier, check_condition_iv_with, CheckConfig, OperatorSpec, Verdict};
use cz_core::harmonic::example5_generate;
use cz_core::identities::{collect_reports, IdentityKind, SweepRanges};
use cz_core::probe::{self, GridParams, ProbeConfig, ProbeReport, TestFunction};
use cz_core::scalar::{format_rational, gamma_j, parse_rational};
use cz_core::{expansion_from_numerator, HarmonicExpansion, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::input::*;
use crate::{KernelInput, ProbeCommand, SCHEMA};

pub struct Output {
    pub text: String,
    pub code: u8,
}

/// One JSON document with the schema tag and command name merged in. Keys
/// come out sorted (serde_json's default map is ordered).
fn document(command: &str, body: Value) -> String {
    let mut map = match body {
        Value::Object(m) => m,
        other => Map::from_iter([("result".to_string(), other)]),
    };
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    let mut s = Value::Object(map).to_string();
    s.push('\n');
    s
}

fn ok(command: &str, body: Value) -> CliResult<Output> {
    Ok(Output { text: document(command, body), code: EXIT_OK })
}

pub fn decompose(input: &KernelInput) -> CliResult<Output> {
    let num = input.numerator_poly()?;
    let expansion = expansion_from_numerator(&num)?;
    ok(
        "decompose",
        json!({
            "n_vars": expansion.n_vars(),
            "order": expansion.max_degree() / 2,
            "expansion": expansion.to_json(),
        }),
    )
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Controlled { .. } => EXIT_OK,
        Verdict::NotControlled { .. } => EXIT_NOT_CONTROLLED,
        Verdict::Undecided { .. } => EXIT_UNDECIDED,
    }
}

fn check_spec(spec: &OperatorSpec, budget: u64, seed: u64) -> CliResult<(Value, u8)> {
    let cfg = CheckConfig { budget, seed, ..CheckConfig::default() };
    let verdict = check_condition_iv_with(spec, &cfg)?;
    let mut body = verdict.to_json();
    body["n_vars"] = json!(spec.n_vars());
    body["order"] = json!(spec.expansion.max_degree() / 2);
    body["multiplier"] = json!(assemble_multiplier(spec).numerator.to_json());
    Ok((body, verdict_code(&verdict)))
}

pub fn check(input: &KernelInput, budget: u64, seed: u64) -> CliResult<Output> {
    let spec = input.spec()?;
    let (body, code) = check_spec(&spec, budget, seed)?;
    Ok(Output { text: document("check", body), code })
}

pub fn gamma(n: u32, j: u32, j0: Option<u32>) -> CliResult<Output> {
    let g = gamma_j(n, j)?;
    let mut body = json!({"n": n, "j": j, "value": g.to_string(), "approx": g.to_f64()});
    if let Some(j0) = j0 {
        let g0 = gamma_j(n, j0)?;
        let ratio = g.checked_div(&g0)?;
        let exact = ratio
            .as_rational()
            .ok_or_else(|| Failure { code: EXIT_INTERNAL, message: format!("γ ratio {ratio} is not rational") })?;
        body["j0"] = json!(j0);
        body["ratio"] = json!(format_rational(&exact));
    }
    ok("gamma", body)
}

fn fundamental_json(f: &FundamentalConstants) -> Value {
    json!({
        "alpha": f.alpha.to_string(),
        "beta": f.beta.to_string(),
        "case": f.case,
    })
}

/// Every exact constant attached to `(n, N)`; dual-path mismatches exit 5.
pub fn constants(n: u32, nn: u32) -> CliResult<Output> {
    let fc = fundamental_constants(n, nn)?;
    let a: Vec<Value> = a_coefficients(n, nn)?
        .iter()
        .enumerate()
        .map(|(l, v)| json!({"L": l, "value": v.to_string()}))
        .collect();
    let b: Vec<Value> = b_polynomial(n, nn)?
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, v)| json!({"k": k, "value": v.to_string()}))
        .collect();
    let mut clj = Vec::new();
    for l in nn + 1..2 * nn {
        for j in 1..=l - nn {
            clj.push(json!({"L": l, "j": j, "value": c_lj(n, nn, l, j)?.to_string()}));
        }
    }
    let mut c2 = Vec::new();
    for j in 1..nn {
        let (summed, closed) = c2j(n, nn, j)?;
        c2.push(json!({"j": j, "summed": summed.to_string(), "closed": closed.to_string()}));
    }
    let mut a2p = Vec::new();
    for p in 1..=nn {
        let f = a2p_functional(n, nn, p)?;
        let mu: Map<String, Value> = f.mu.iter().map(|(j, v)| (j.to_string(), json!(v.to_string()))).collect();
        a2p.push(json!({"p": p, "mu": mu}));
    }
    ok(
        "constants",
        json!({
            "n": n,
            "order": nn,
            "fundamental": fundamental_json(&fc),
            "a": a,
            "b": b,
            "c_lj": clj,
            "c2j": c2,
            "a2p": a2p,
        }),
    )
}

/// JSON lines: failing reports (or every report with `all`), then a summary.
pub fn identities(only: &[String], all: bool) -> CliResult<Output> {
    let mut ranges = SweepRanges::default();
    if !only.is_empty() {
        ranges.identities = only
            .iter()
            .map(|s| IdentityKind::from_name(s).ok_or_else(|| Failure::usage(format!("unknown identity {s:?}"))))
            .collect::<CliResult<_>>()?;
    }
    let reports = collect_reports(&ranges)?;
    let mut text = String::new();
    let (mut checked, mut skipped, mut failures) = (0usize, 0usize, 0usize);
    let mut per_kind: BTreeMap<&str, usize> = BTreeMap::new();
    for rep in &reports {
        if rep.skipped {
            skipped += 1;
        } else {
            checked += 1;
            *per_kind.entry(rep.kind.name()).or_default() += 1;
        }
        if rep.failed() {
            failures += 1;
        }
        if all || rep.failed() {
            text.push_str(&document("identities", rep.to_json()));
        }
    }
    text.push_str(&document(
        "identities",
        json!({"summary": true, "checked": checked, "skipped": skipped, "failures": failures, "per_identity": per_kind}),
    ));
    Ok(Output { text, code: if failures == 0 { EXIT_OK } else { EXIT_FAILED } })
}

fn parse_point(s: &str) -> CliResult<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Failure::usage(format!("point {s:?} is not of the form x,y"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let x = parts[0].parse().map_err(|_| bad())?;
    let y = parts[1].parse().map_err(|_| bad())?;
    Ok([x, y])
}

/// Points with `1.5 <= |x| <= 4` at random angles.
fn random_points(count: usize, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r: f64 = rng.gen_range(1.5..4.0);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

fn report_output(rep: &ProbeReport, csv: bool) -> CliResult<Output> {
    let code = if rep.pass { EXIT_OK } else { EXIT_FAILED };
    if csv {
        let table = rep.table.as_ref().ok_or_else(|| Failure::usage("this probe produces no table"))?;
        return Ok(Output { text: table.to_csv(), code });
    }
    Ok(Output { text: document("probe", rep.to_json()), code })
}

pub fn probe(cmd: ProbeCommand, csv: bool) -> CliResult<Output> {
    let mut cfg = ProbeConfig::default();
    match cmd {
        ProbeCommand::Reconstruct { input, points, count, seed, tol } => {
            if csv {
                return Err(Failure::usage("this probe produces no table"));
            }
            if let Some(t) = tol {
                cfg.reconstruction_tol = t;
            }
            let spec = input.spec()?;
            let pts = if points.is_empty() {
                random_points(count, seed)
            } else {
                points.iter().map(|p| parse_point(p)).collect::<CliResult<_>>()?
            };
            let mut reports = Vec::new();
            let mut pass = true;
            for (deg, p) in spec.expansion.components() {
                for x in &pts {
                    let rep = probe::verify_reconstruction_with(p, *x, &cfg)?;
                    pass &= rep.pass;
                    let mut j = rep.to_json();
                    j["params"]["degree"] = json!(deg);
                    reports.push(j);
                }
            }
            let body = json!({"quantity": "reconstruction", "pass": pass, "reports": reports});
            Ok(Output { text: document("probe", body), code: if pass { EXIT_OK } else { EXIT_FAILED } })
        }
        ProbeCommand::Scan { input, tol, directions } => {
            if let Some(t) = tol {
                cfg.scan_drift = t;
            }
            if let Some(d) = directions {
                cfg.scan_directions = d;
            }
            report_output(&probe::multiplier_ratio_scan(&input.spec()?, &cfg)?, csv)
        }
        ProbeCommand::Zeros { input } => report_output(&probe::zero_sets_check(&input.spec()?)?, csv),
        ProbeCommand::Pointwise { input, function, points, half_width, eps, tol } => {
            if let Some(t) = tol {
                cfg.grid_drift = t;
            }
            let f = TestFunction::from_name(&function)
                .ok_or_else(|| Failure::usage(format!("unknown test function {function:?}")))?;
            let grid = GridParams { half_width, points };
            report_output(&probe::discrete_pointwise_probe(&input.spec()?, f, grid, &eps, &cfg)?, csv)
        }
        ProbeCommand::Growth { dim, orders } => report_output(&probe::bn_growth_table(dim, &orders)?, csv),
    }
}

/// Generates `xy·Q_2j` for `0..=j`; with weights, also checks the kernel
/// `Σ ε_i xy·Q_2i`.
pub fn example5(j: u32, eps: &[String], budget: u64) -> CliResult<Output> {
    if j > 40 {
        return Err(Failure::usage("j must be at most 40"));
    }
    let family: Vec<Poly> = (0..=j).map(example5_generate).collect();
    let members: Vec<Value> = family
        .iter()
        .enumerate()
        .map(|(i, p)| json!({"j": i, "harmonic": p.is_harmonic(), "poly": p.to_json()}))
        .collect();
    let mut body = json!({"family": members});
    let mut code = EXIT_OK;
    if !eps.is_empty() {
        if eps.len() > family.len() {
            return Err(Failure::usage(format!("{} weights given for {} family members", eps.len(), family.len())));
        }
        let mut comps = Vec::new();
        for (i, e) in eps.iter().enumerate() {
            let w = parse_rational(e)?;
            if w != num_traits::Zero::zero() {
                comps.push((2 * i as u32 + 2, family[i].scale_rational(&w)));
            }
        }
        if comps.is_empty() {
            return Err(Failure::usage("all weights are zero"));
        }
        let spec = OperatorSpec::new(HarmonicExpansion::new(3, comps)?);
        let (verdict, c) = check_spec(&spec, budget, CheckConfig::default().seed)?;
        body["verdict"] = verdict;
        code = c;
    }
    Ok(Output { text: document("example5", body), code })
}
