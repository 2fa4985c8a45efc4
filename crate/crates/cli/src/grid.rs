//! Grid mini-language.
//!
//! - `geometric:start:stop:count`: `count` log-spaced points from `start` to
//!   `stop`. For exponent grids the points are `p - 1`, so
//!   `geometric:0.5:0.001:12` runs `p` from 1.5 down toward 1.
//! - `explicit:[a, b, ...]`: the listed values, used as given.

use hardy_dixmier::curve::geometric_grid;

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum GridSpec {
    Geometric { start: f64, stop: f64, count: usize },
    Explicit(Vec<f64>),
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("geometric:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("expected geometric:start:stop:count, got {s:?}"));
            }
            let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
            let count = parts[2].trim().parse::<usize>().map_err(|e| format!("{:?}: {e}", parts[2]))?;
            return Ok(GridSpec::Geometric { start: num(parts[0])?, stop: num(parts[1])?, count });
        }
        if let Some(rest) = s.strip_prefix("explicit:") {
            let values: Vec<f64> = serde_json::from_str(rest).map_err(|e| format!("explicit grid {rest:?}: {e}"))?;
            return Ok(GridSpec::Explicit(values));
        }
        Err(format!("unknown grid {s:?}; use geometric:start:stop:count or explicit:[...]"))
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridSpec::Geometric { start, stop, count } => write!(f, "geometric:{start}:{stop}:{count}"),
            GridSpec::Explicit(v) => {
                let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "explicit:[{}]", items.join(","))
            }
        }
    }
}

impl GridSpec {
    fn raw(&self) -> Result<Vec<f64>, CliError> {
        let values = match self {
            GridSpec::Geometric { start, stop, count } => geometric_grid(*start, *stop, *count)?,
            GridSpec::Explicit(v) => v.clone(),
        };
        if values.is_empty() {
            return Err(CliError::Config("grid is empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Config("grid values must be finite".into()));
        }
        Ok(values)
    }

    /// Exponents in `(1, 2]`, descending toward 1.
    pub fn p_values(&self) -> Result<Vec<f64>, CliError> {
        let mut p = self.raw()?;
        if let GridSpec::Geometric { .. } = self {
            for v in &mut p {
                *v += 1.0;
            }
        }
        if p.iter().any(|&v| !(v > 1.0 && v <= 2.0)) {
            return Err(CliError::Config("p-grid values must lie in (1, 2]".into()));
        }
        if p.windows(2).any(|w| w[1] >= w[0]) {
            return Err(CliError::Config("p-grid must decrease strictly toward 1".into()));
        }
        Ok(p)
    }

    /// Times `> 1`, strictly increasing.
    pub fn t_values(&self) -> Result<Vec<f64>, CliError> {
        let t = self.raw()?;
        if t.iter().any(|&v| v <= 1.0) {
            return Err(CliError::Config("t-grid values must exceed 1".into()));
        }
        if t.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config("t-grid must increase strictly".into()));
        }
        Ok(t)
    }
}
