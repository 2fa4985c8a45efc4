//! Symbol and step-function files.
//!
//! Symbols:
//!
//! ```json
//! {"kind": "taylor", "coeffs": [[re, im], ...]}
//! {"kind": "lacunary", "c": [c0, c1, [mantissa, exp2], ...]}
//! ```
//!
//! Lacunary entries too small for a double may be written as
//! `[mantissa, exp2]` pairs. Step functions:
//! `{"breakpoints": [0, t1, ...], "values": [v0, ...]}`.

use std::path::Path;

use hardy_dixmier::rearrange::StepFunction;
use hardy_dixmier::symbols::{LacunarySpec, SymbolSeries};
use hardy_dixmier::{Complex64, ScaledReal};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LacunaryEntry {
    Plain(f64),
    Scaled(f64, i64),
}

impl LacunaryEntry {
    pub fn from_scaled(x: ScaledReal) -> Self {
        let v = x.to_f64();
        if v.is_normal() || x.is_zero() {
            LacunaryEntry::Plain(v)
        } else {
            LacunaryEntry::Scaled(x.mantissa(), x.exponent())
        }
    }

    fn to_scaled(self) -> ScaledReal {
        match self {
            LacunaryEntry::Plain(v) => ScaledReal::from_f64(v),
            LacunaryEntry::Scaled(m, e) => ScaledReal::new(m, e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SymbolFile {
    Taylor { coeffs: Vec<[f64; 2]> },
    Lacunary { c: Vec<LacunaryEntry> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Symbol {
    Taylor(SymbolSeries),
    Lacunary(LacunarySpec),
}

impl Symbol {
    pub fn kind(&self) -> &'static str {
        match self {
            Symbol::Taylor(_) => "taylor",
            Symbol::Lacunary(_) => "lacunary",
        }
    }
}

impl SymbolFile {
    pub fn from_lacunary(spec: &LacunarySpec) -> Self {
        SymbolFile::Lacunary { c: spec.coeffs().iter().map(|&x| LacunaryEntry::from_scaled(x)).collect() }
    }

    fn into_symbol(self) -> Result<Symbol, CliError> {
        match self {
            SymbolFile::Taylor { coeffs } => {
                if coeffs.is_empty() {
                    return Err(CliError::Config("taylor symbol needs at least one coefficient".into()));
                }
                if coeffs.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(CliError::Config("taylor coefficients must be finite".into()));
                }
                Ok(Symbol::Taylor(SymbolSeries::new(coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect())))
            }
            SymbolFile::Lacunary { c } => {
                Ok(Symbol::Lacunary(LacunarySpec::new(c.into_iter().map(LacunaryEntry::to_scaled).collect())?))
            }
        }
    }
}

fn read_source(source: &str, what: &str) -> Result<String, CliError> {
    if source.trim_start().starts_with('{') {
        return Ok(source.to_string());
    }
    std::fs::read_to_string(Path::new(source))
        .map_err(|e| CliError::Config(format!("cannot read {what} file {source}: {e}")))
}

/// Inline JSON (anything starting with `{`) or a path to a JSON file.
pub fn load_symbol(source: &str) -> Result<Symbol, CliError> {
    let text = read_source(source, "symbol")?;
    let file: SymbolFile =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("symbol {source}: {e}")))?;
    file.into_symbol()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFile {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

pub fn load_step(source: &str) -> Result<StepFunction, CliError> {
    let text = read_source(source, "step function")?;
    let file: StepFile =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("step function {source}: {e}")))?;
    Ok(StepFunction::from_breakpoints(&file.breakpoints, file.values)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_symbols() {
        let Symbol::Taylor(s) = load_symbol(r#"{"kind": "taylor", "coeffs": [[0, 0], [1, 0.5]]}"#).unwrap() else {
            panic!("expected a taylor symbol")
        };
        assert_eq!(s.coeff(1), Complex64::new(1.0, 0.5));
        let Symbol::Lacunary(l) = load_symbol(r#"{"kind": "lacunary", "c": [1, 0.5, [1.0, -2000]]}"#).unwrap() else {
            panic!("expected a lacunary symbol")
        };
        assert_eq!(l.max_index(), 2);
        assert_eq!(l.coeffs()[2].exponent(), -2000);
    }

    #[test]
    fn lacunary_round_trip() {
        let spec = hardy_dixmier::symbols::gap_example(40).unwrap();
        let text = serde_json::to_string(&SymbolFile::from_lacunary(&spec)).unwrap();
        let Symbol::Lacunary(back) = load_symbol(&text).unwrap() else { panic!() };
        assert_eq!(back, spec);
    }

    #[test]
    fn config_errors() {
        assert!(
            matches!(load_symbol("/nonexistent/file.json"), Err(CliError::Config(m)) if m.contains("/nonexistent/file.json"))
        );
        assert!(matches!(load_symbol(r#"{"kind": "taylor", "coeffs": []}"#), Err(CliError::Config(_))));
        assert!(matches!(load_symbol(r#"{"kind": "lacunary", "c": [1, 2]}"#), Err(CliError::Config(_))));
        assert!(matches!(load_step(r#"{"breakpoints": [0, 1], "values": [1, 2]}"#), Err(CliError::Config(_))));
    }
}
