//! Nonincreasing rearrangements of weighted sample clouds, distribution
//! functions, Lorentz and log-scaled norms, and the Holmstedt K-functional.
//!
//! Every integral over `[0, ∞)` here is a finite sum over the pieces of a
//! [`StepFunction`]; there is no numerical integration.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::domain;
use crate::symbols::LacunarySpec;
use crate::{Error, Exponent, Result};

/// Pairs `(value, mass)` standing in for a nonnegative function on a measure
/// space.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredSamples {
    values: Vec<f64>,
    masses: Vec<f64>,
}

impl MeasuredSamples {
    pub fn new(values: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if values.len() != masses.len() {
            return Err(Error::InvalidSamples(format!("{} values but {} masses", values.len(), masses.len())));
        }
        if values.is_empty() {
            return Err(Error::InvalidSamples("no samples".into()));
        }
        for (i, (&v, &m)) in values.iter().zip(&masses).enumerate() {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidSamples(format!("value {v} at index {i} is not finite and nonnegative")));
            }
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::InvalidSamples(format!("mass {m} at index {i} is not finite and positive")));
            }
        }
        Ok(MeasuredSamples { values, masses })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// `Σ value^p · mass`.
    pub fn power_sum(&self, p: f64) -> f64 {
        self.values.iter().zip(&self.masses).map(|(&v, &m)| pow_times(v, p, m)).sum()
    }

    /// Concatenation of two clouds.
    pub fn concat(mut self, other: &MeasuredSamples) -> Self {
        self.values.extend_from_slice(&other.values);
        self.masses.extend_from_slice(&other.masses);
        self
    }
}

/// `v^p · w`, falling back to logarithms when a factor or the product leaves
/// the normal range (huge widths against tiny values).
fn pow_times(v: f64, p: f64, w: f64) -> f64 {
    if v == 0.0 || w == 0.0 {
        return 0.0;
    }
    let vp = if p == 1.0 { v } else { v.powf(p) };
    let direct = vp * w;
    if vp.is_normal() && direct.is_normal() {
        return direct;
    }
    (p * v.ln() + w.ln()).exp()
}

/// Right-open nonincreasing step function on `[0, ∞)`: value `v_i` on
/// `[t_{i-1}, t_i)` with `t_0 = 0`, zero from `t_m` on.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    ends: Vec<f64>,
    values: Vec<f64>,
    /// `∫_0^{t_i}`
    cumulative: Vec<f64>,
}

impl StepFunction {
    /// Builds from right endpoints `t_1 < … < t_m` and values `v_1 ≥ … ≥ v_m ≥ 0`.
    /// Equal neighbouring values are merged.
    pub fn new(ends: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let integrals: Vec<f64> = {
            let mut prev = 0.0;
            ends.iter()
                .zip(&values)
                .map(|(&t, &v)| {
                    let w = t - prev;
                    prev = t;
                    pow_times(v, 1.0, w)
                })
                .collect()
        };
        Self::with_piece_integrals(ends, values, integrals)
    }

    /// Builds from breakpoints `0 = t_0 < t_1 < … < t_m` and `m` values.
    pub fn from_breakpoints(breakpoints: &[f64], values: Vec<f64>) -> Result<Self> {
        match breakpoints.split_first() {
            Some((&0.0, rest)) => Self::new(rest.to_vec(), values),
            Some(_) => Err(Error::InvalidStep("first breakpoint must be 0".into())),
            None => Err(Error::InvalidStep("no breakpoints".into())),
        }
    }

    pub fn zero() -> Self {
        StepFunction { ends: Vec::new(), values: Vec::new(), cumulative: Vec::new() }
    }

    /// Constant `value` on `[0, length)`.
    pub fn indicator(value: f64, length: f64) -> Result<Self> {
        Self::new(alloc::vec![length], alloc::vec![value])
    }

    /// Same as [`StepFunction::new`] with the integral of each piece supplied
    /// by the caller (exact when it is known in closed form).
    fn with_piece_integrals(ends: Vec<f64>, values: Vec<f64>, integrals: Vec<f64>) -> Result<Self> {
        if ends.len() != values.len() {
            return Err(Error::InvalidStep(format!("{} ends but {} values", ends.len(), values.len())));
        }
        let mut prev_t = 0.0;
        let mut prev_v = f64::INFINITY;
        for (i, (&t, &v)) in ends.iter().zip(&values).enumerate() {
            if !t.is_finite() {
                return Err(Error::Overflow("step function breakpoint"));
            }
            if !(t > prev_t) {
                return Err(Error::InvalidStep(format!("breakpoint {t} at index {i} is not increasing")));
            }
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidStep(format!("value {v} at index {i} is not finite and nonnegative")));
            }
            if v > prev_v {
                return Err(Error::InvalidStep(format!("value {v} at index {i} increases")));
            }
            prev_t = t;
            prev_v = v;
        }

        let mut out_ends: Vec<f64> = Vec::with_capacity(ends.len());
        let mut out_values: Vec<f64> = Vec::with_capacity(values.len());
        let mut cumulative: Vec<f64> = Vec::with_capacity(values.len());
        let mut total = 0.0;
        for ((t, v), a) in ends.into_iter().zip(values).zip(integrals) {
            total += a;
            if out_values.last() == Some(&v) {
                *out_ends.last_mut().unwrap() = t;
                *cumulative.last_mut().unwrap() = total;
            } else {
                out_ends.push(t);
                out_values.push(v);
                cumulative.push(total);
            }
        }
        Ok(StepFunction { ends: out_ends, values: out_values, cumulative })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Right endpoints `t_1 … t_m`.
    pub fn ends(&self) -> &[f64] {
        &self.ends
    }

    /// `0, t_1, …, t_m`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = Vec::with_capacity(self.ends.len() + 1);
        b.push(0.0);
        b.extend_from_slice(&self.ends);
        b
    }

    /// `t_m`, or 0 for the zero function.
    pub fn support_end(&self) -> f64 {
        self.ends.last().copied().unwrap_or(0.0)
    }

    pub fn max_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    fn start(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.ends[i - 1]
        }
    }

    fn cumulative_before(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.cumulative[i - 1]
        }
    }

    /// Index of the piece containing `t`, `None` past the support.
    fn piece_at(&self, t: f64) -> Option<usize> {
        let i = self.ends.partition_point(|&e| e <= t);
        (i < self.ends.len()).then_some(i)
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        self.piece_at(t).map_or(0.0, |i| self.values[i])
    }

    /// `∫_0^∞ h`.
    pub fn total_integral(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// `∫_0^t h`.
    pub fn integral_to(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return 0.0;
        }
        match self.piece_at(t) {
            None => self.total_integral(),
            Some(i) => self.cumulative_before(i) + pow_times(self.values[i], 1.0, t - self.start(i)),
        }
    }

    /// `∫_0^∞ h^p`.
    pub fn power_integral(&self, p: f64) -> f64 {
        (0..self.len()).map(|i| pow_times(self.values[i], p, self.ends[i] - self.start(i))).sum()
    }

    /// `∫_s^∞ h^p`.
    pub fn power_integral_from(&self, s: f64, p: f64) -> f64 {
        let first = match self.piece_at(s.max(0.0)) {
            None => return 0.0,
            Some(i) => i,
        };
        let mut acc = pow_times(self.values[first], p, self.ends[first] - s.max(self.start(first)));
        for i in first + 1..self.len() {
            acc += pow_times(self.values[i], p, self.ends[i] - self.start(i));
        }
        acc
    }

    /// `t ↦ h(t/a)`.
    pub fn dilate(&self, a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(domain("dilation factor must be positive and finite", a));
        }
        Self::new(self.ends.iter().map(|t| t * a).collect(), self.values.clone())
    }

    /// `t ↦ h(t)` on `[0, end)` and 0 afterwards.
    pub fn truncate(&self, end: f64) -> Result<Self> {
        let mut ends = Vec::new();
        let mut values = Vec::new();
        for (&t, &v) in self.ends.iter().zip(&self.values) {
            let start = ends.last().copied().unwrap_or(0.0);
            if start >= end {
                break;
            }
            ends.push(t.min(end));
            values.push(v);
        }
        Self::new(ends, values)
    }
}

/// Step approximation of `C/(1+t)` on `[0, t_end)`: `pieces` pieces with
/// geometric right endpoints from `first_end` to `t_end`, each carrying the
/// mean of `C/(1+t)` over its piece so that integrals agree at every
/// breakpoint.
pub fn reciprocal_step(c: f64, first_end: f64, t_end: f64, pieces: usize) -> Result<StepFunction> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(domain("reciprocal fixture constant must be finite and nonnegative", c));
    }
    if pieces < 2 || !(first_end > 0.0) || !(t_end > first_end) || !t_end.is_finite() {
        return Err(domain("reciprocal fixture needs 0 < first_end < t_end and two pieces", first_end));
    }
    let (a, b) = (first_end.ln(), t_end.ln());
    let ends: Vec<f64> = (0..pieces)
        .map(|i| if i + 1 == pieces { t_end } else { (a + (b - a) * i as f64 / (pieces - 1) as f64).exp() })
        .collect();
    let mut prev = 0.0f64;
    let mut values = Vec::with_capacity(pieces);
    let mut integrals = Vec::with_capacity(pieces);
    for &t in &ends {
        let mass = c * (t.ln_1p() - prev.ln_1p());
        values.push(mass / (t - prev));
        integrals.push(mass);
        prev = t;
    }
    // rounding can break monotonicity between nearly equal neighbours
    for i in 1..values.len() {
        if values[i] > values[i - 1] {
            values[i] = values[i - 1];
        }
    }
    StepFunction::with_piece_integrals(ends, values, integrals)
}

/// Nonincreasing rearrangement of a sample cloud: values sorted descending,
/// masses laid end to end from 0.
pub fn rearrange(samples: &MeasuredSamples) -> Result<StepFunction> {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&i, &j| samples.values[j].total_cmp(&samples.values[i]).then(i.cmp(&j)));

    let mut ends = Vec::with_capacity(order.len());
    let mut values = Vec::with_capacity(order.len());
    let mut integrals = Vec::with_capacity(order.len());
    let mut t = 0.0;
    for i in order {
        let (v, m) = (samples.values[i], samples.masses[i]);
        t += m;
        // identical positions can only come from masses lost to rounding
        if ends.last() == Some(&t) {
            continue;
        }
        ends.push(t);
        values.push(v);
        integrals.push(v * m);
    }
    StepFunction::with_piece_integrals(ends, values, integrals)
}

/// `Φ(t) = c_j` on `[2^j - 1, 2^{j+1} - 1)`, with exact piece integrals
/// `2^j c_j`.
pub fn lacunary_rearrangement(spec: &LacunarySpec) -> Result<StepFunction> {
    let m = spec.max_index();
    if m + 1 >= f64::MAX_EXP as usize {
        return Err(Error::Overflow("lacunary rearrangement breakpoint 2^(M+1) - 1"));
    }
    let ends: Vec<f64> = (0..=m).map(|j| libm::ldexp(1.0, j as i32 + 1) - 1.0).collect();
    let values: Vec<f64> = spec.coeffs().iter().map(|c| c.to_f64()).collect();
    if let Some(j) = values.iter().position(|&v| !(v > 0.0) || v < f64::MIN_POSITIVE) {
        return Err(Error::Overflow(if j == 0 { "lacunary coefficient" } else { "lacunary coefficient underflows" }));
    }
    let integrals = (0..=m).map(|j| spec.block_mass(j).to_f64()).collect();
    StepFunction::with_piece_integrals(ends, values, integrals)
}

/// `μ_h(λ) = sup{t : h(t) > λ}`; infinite for `λ < 0`.
pub fn distribution(h: &StepFunction, lambda: f64) -> f64 {
    if lambda < 0.0 {
        return f64::INFINITY;
    }
    let k = h.values.partition_point(|&v| v > lambda);
    if k == 0 {
        0.0
    } else {
        h.ends[k - 1]
    }
}

/// `(∫_0^∞ h^p)^{1/p}`.
pub fn lp_norm(h: &StepFunction, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(domain("L^p exponent must be positive and finite", p));
    }
    Ok(h.power_integral(p).powf(1.0 / p))
}

/// `(∫_0^∞ (t^{1/p} h(t))^q dt/t)^{1/q}`, or `sup_t t^{1/p} h(t)` for `q = ∞`.
pub fn lorentz_quasinorm(h: &StepFunction, p: f64, q: Exponent) -> Result<f64> {
    if !(p > 0.0) {
        return Err(domain("Lorentz exponent p must be positive", p));
    }
    match q {
        Exponent::Infinite => Ok((0..h.len())
            .filter(|&i| h.values[i] > 0.0)
            .map(|i| (h.ends[i].ln() / p + h.values[i].ln()).exp())
            .fold(0.0, f64::max)),
        Exponent::Finite(q) => {
            if !(q > 0.0) {
                return Err(domain("Lorentz exponent q must be positive", q));
            }
            let r = q / p;
            let mut acc = 0.0;
            for i in 0..h.len() {
                let v = h.values[i];
                if v == 0.0 {
                    continue;
                }
                let (a, b) = (h.start(i), h.ends[i]);
                // v^q (b^r - a^r) / r
                let diff_factor = if a == 0.0 { 1.0 } else { -(r * (a / b).ln()).exp_m1() };
                acc += (q * v.ln() + r * b.ln()).exp() * diff_factor / r;
            }
            Ok(acc.powf(1.0 / q))
        }
    }
}

/// `sup_{t>0} (∫_0^t h) / ln(2 + t)`.
///
/// On each piece `(∫_0^t h)/ln(2+t)` has no interior maximum: the sign of its
/// derivative is that of `v (2+t) ln(2+t) - ∫_0^t h`, which is nondecreasing in
/// `t`. The supremum is therefore attained at a breakpoint (or is 0).
pub fn dix_log_norm(h: &StepFunction) -> f64 {
    h.ends.iter().zip(&h.cumulative).map(|(&t, &i)| i / (2.0 + t).ln()).fold(0.0, f64::max)
}

/// Holmstedt's formula `∫_0^{t²} h + t (∫_{t²}^∞ h²)^{1/2}` for the pair
/// `(L¹, L²)`.
pub fn holmstedt_k(h: &StepFunction, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain("K-functional parameter must be positive", t));
    }
    let s = t * t;
    Ok(h.integral_to(s) + t * h.power_integral_from(s, 2.0).sqrt())
}

/// `sup_{t ∈ grid} K(t, h; L¹, L²) / ln(2 + t)`.
pub fn lg_interp_norm(h: &StepFunction, t_grid: &[f64]) -> Result<f64> {
    if t_grid.is_empty() {
        return Err(Error::EmptyGrid("lg_interp_norm needs a t grid"));
    }
    let mut best = 0.0f64;
    for &t in t_grid {
        best = best.max(holmstedt_k(h, t)? / (2.0 + t).ln());
    }
    Ok(best)
}

/// A grid for [`lg_interp_norm`]: the images `√t_i` of all breakpoints, a
/// geometric sweep from `10^-3` to `10^3 · √t_m`, and `refine` geometric
/// points between consecutive entries.
pub fn default_t_grid(h: &StepFunction, refine: usize) -> Vec<f64> {
    let mut base: Vec<f64> = h.ends.iter().map(|t| t.sqrt()).collect();
    let top = (h.support_end().sqrt() * 1e3).max(1e3);
    let (lo, hi) = (1e-3f64.ln(), top.ln());
    let sweep = 96;
    base.extend((0..=sweep).map(|i| (lo + (hi - lo) * i as f64 / sweep as f64).exp()));
    base.sort_by(f64::total_cmp);
    base.dedup();

    let mut grid = Vec::with_capacity(base.len() * (refine + 1));
    for w in base.windows(2) {
        grid.push(w[0]);
        let (a, b) = (w[0].ln(), w[1].ln());
        for k in 1..=refine {
            grid.push((a + (b - a) * k as f64 / (refine + 1) as f64).exp());
        }
    }
    grid.extend(base.last());
    grid
}
