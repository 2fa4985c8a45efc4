//! Report emission. Floats are printed with 17 significant digits in
//! scientific notation (`null` in JSON, `nan`/`inf` in CSV when not finite),
//! and every report carries `schema_version`, so identical runs produce
//! identical bytes.

use std::io::Write;
use std::path::PathBuf;

use hardy_dixmier::LimitCurve;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A float serialized as `{:.16e}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sci(pub f64);

pub fn fmt_float(v: f64) -> Option<String> {
    v.is_finite().then(|| format!("{v:.16e}"))
}

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match fmt_float(self.0) {
            Some(text) => RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s),
            None => s.serialize_none(),
        }
    }
}

pub fn sci(v: &[f64]) -> Vec<Sci> {
    v.iter().copied().map(Sci).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => fmt_float(*v).unwrap_or_else(|| {
                if v.is_nan() {
                    "nan".into()
                } else if *v > 0.0 {
                    "inf".into()
                } else {
                    "-inf".into()
                }
            }),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// The plot-ready table a command emits under `--format csv`.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// A limit curve with its window and estimate.
#[derive(Serialize)]
pub struct CurveOut {
    pub approach: &'static str,
    pub abscissae: Vec<Sci>,
    pub values: Vec<Sci>,
    pub admissible: usize,
    pub monotonicity: &'static str,
    pub extrapolation: &'static str,
    pub estimate: Sci,
}

impl From<&LimitCurve> for CurveOut {
    fn from(c: &LimitCurve) -> Self {
        use hardy_dixmier::{Approach, Monotonicity};
        CurveOut {
            approach: match c.approach() {
                Approach::PToOne => "p-to-one",
                Approach::TToInfinity => "t-to-infinity",
            },
            abscissae: sci(c.abscissae()),
            values: sci(c.ordinates()),
            admissible: c.admissible_len(),
            monotonicity: match c.monotonicity() {
                Monotonicity::Constant => "constant",
                Monotonicity::Increasing => "increasing",
                Monotonicity::Decreasing => "decreasing",
                Monotonicity::Mixed => "mixed",
            },
            extrapolation: c.method().tag(),
            estimate: Sci(c.estimate()),
        }
    }
}

/// Top-level JSON envelope.
#[derive(Serialize)]
pub struct Envelope<'a, R: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    #[serde(flatten)]
    pub report: R,
}

pub fn emit<R: Serialize>(
    command: &str,
    report: R,
    table: &Table,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let mut bytes = Vec::new();
    match format {
        Format::Json => {
            let env = Envelope { schema_version: SCHEMA_VERSION, command, report };
            serde_json::to_writer_pretty(&mut bytes, &env).map_err(|e| CliError::Numeric(e.to_string()))?;
            bytes.push(b'\n');
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut bytes);
            w.write_record(&table.headers).map_err(|e| CliError::Numeric(e.to_string()))?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::render)).map_err(|e| CliError::Numeric(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Numeric(e.to_string()))?;
        }
    }
    match out {
        Some(path) => {
            std::fs::write(path, &bytes).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
        }
        None => match std::io::stdout().write_all(&bytes) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Config(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(serde_json::to_string(&Sci(0.1)).unwrap(), "1.0000000000000001e-1");
        assert_eq!(serde_json::to_string(&Sci(f64::NAN)).unwrap(), "null");
        assert_eq!(
            serde_json::to_string(&vec![Sci(-2.5), Sci(f64::INFINITY)]).unwrap(),
            "[-2.5000000000000000e0,null]"
        );
        let back: f64 = serde_json::from_str(&serde_json::to_string(&Sci(std::f64::consts::PI)).unwrap()).unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn csv_cells() {
        assert_eq!(Cell::Num(f64::NEG_INFINITY).render(), "-inf");
        assert_eq!(Cell::Int(7).render(), "7");
        assert_eq!(Cell::Num(1.0).render(), "1.0000000000000000e0");
    }
}
