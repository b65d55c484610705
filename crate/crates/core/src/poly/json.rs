use serde::{Deserialize, Serialize};

use super::{HPoly, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{Coeff, PiScalar};

/// Interchange form: `{"n_vars", "degree", "terms": [{"exp", "coeff"}]}` with
/// coefficients in the textual scalar syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n_vars: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl<C: Coeff> HPoly<C> {
    /// Terms are emitted in descending lex order so output is deterministic.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n_vars: self.n_vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exp: m.0.clone(), coeff: c.to_string() })
                .collect(),
        }
    }
}

impl HPoly<PiScalar> {
    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let mut out = Self::zero(j.n_vars, j.degree);
        for t in &j.terms {
            if t.exp.len() != j.n_vars {
                return Err(Error::Parse(format!(
                    "term {:?} has {} exponents, expected {}",
                    t.exp,
                    t.exp.len(),
                    j.n_vars
                )));
            }
            let d: u32 = t.exp.iter().sum();
            if d != j.degree {
                return Err(Error::Parse(format!(
                    "term {:?} has degree {d}, polynomial is declared homogeneous of degree {}",
                    t.exp, j.degree
                )));
            }
            let c: PiScalar = t.coeff.parse()?;
            out.add_term(Monomial(t.exp.clone()), c);
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }
}
