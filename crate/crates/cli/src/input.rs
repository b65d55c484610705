use std::fmt;

use cz_core::criterion::OperatorSpec;
use cz_core::harmonic::ExpansionJson;
use cz_core::{Error, HarmonicExpansion, Poly};
use serde_json::Value;

use crate::KernelInput;

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_CONTROLLED: u8 = 3;
pub const EXIT_UNDECIDED: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Internal consistency failures are bugs; everything else is bad input.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_INTERNAL,
            Error::QuadratureUnderResolved { .. } => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Inline text, or the contents of the file after `@`.
fn read_arg(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

impl KernelInput {
    pub fn numerator_poly(&self) -> CliResult<Poly> {
        let Some(arg) = &self.numerator else {
            return Err(Failure::usage("--numerator is required"));
        };
        if self.expansion.is_some() {
            return Err(Failure::usage("--expansion is not accepted here"));
        }
        let p = Poly::from_json_str(&read_arg(arg)?)?;
        self.check_dim(p.n_vars())?;
        Ok(p)
    }

    pub fn spec(&self) -> CliResult<OperatorSpec> {
        let expansion = match (&self.numerator, &self.expansion) {
            (Some(_), Some(_)) => return Err(Failure::usage("give either --numerator or --expansion, not both")),
            (None, None) => return Err(Failure::usage("one of --numerator or --expansion is required")),
            (Some(_), None) => cz_core::expansion_from_numerator(&self.numerator_poly()?)?,
            (None, Some(arg)) => {
                // accepts a bare expansion or a whole `decompose` document
                let v: Value = serde_json::from_str(&read_arg(arg)?)
                    .map_err(|e| Failure::usage(format!("malformed expansion JSON: {e}")))?;
                let inner = v.get("expansion").cloned().unwrap_or(v);
                let j: ExpansionJson = serde_json::from_value(inner)
                    .map_err(|e| Failure::usage(format!("malformed expansion JSON: {e}")))?;
                HarmonicExpansion::from_json(&j)?
            }
        };
        self.check_dim(expansion.n_vars())?;
        Ok(OperatorSpec::new(expansion))
    }

    fn check_dim(&self, n: usize) -> CliResult<()> {
        match self.dim {
            Some(d) if d != n => Err(Failure::usage(format!("input has {n} variables but --dim is {d}"))),
            _ => Ok(()),
        }
    }
}
