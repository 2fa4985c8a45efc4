//! Sampled limit curves `p ↘ 1` and `t → ∞` with a conservative limit
//! estimate.
//!
//! The estimate is one of: the mean of a plateau (last five admissible points
//! within relative `1e-3`), a quadratic extrapolation through the last three
//! admissible points when the tail half of the admissible points is monotone,
//! or the maximum over the tail half
//! of the admissible points as a `limsup` surrogate. The raw curve is always
//! kept alongside.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::domain;
use crate::{Error, Result};

/// Relative spread below which the last points count as a plateau.
pub const PLATEAU_TOLERANCE: f64 = 1e-3;
/// Number of trailing points inspected for a plateau.
pub const PLATEAU_POINTS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Approach {
    /// Abscissae are exponents `p` decreasing toward 1.
    PToOne,
    /// Abscissae are times `t > 1` increasing to infinity.
    TToInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extrapolation {
    None,
    LastThreeRichardson,
    PlateauMean,
}

impl Extrapolation {
    pub fn tag(self) -> &'static str {
        match self {
            Extrapolation::None => "none",
            Extrapolation::LastThreeRichardson => "last-3-richardson",
            Extrapolation::PlateauMean => "plateau-mean",
        }
    }
}

/// Shape of the admissible ordinates, in approach order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
    Mixed,
}

/// Which points may enter the estimate.
///
/// A finite truncation of an infinite object (a step function cut at
/// `support_end`) only sees `p`-scales with `(p-1) ln(support_end) >= decay`
/// and times `t <= support_end`; beyond that the curve reflects the cut, not
/// the object.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Window {
    Full,
    SupportAware { support_end: f64, decay: f64 },
}

impl Window {
    /// Support-aware window with the default decay `8`, i.e. `T^{-(p-1)} <= e^{-8}`.
    pub fn support_aware(support_end: f64) -> Self {
        Window::SupportAware { support_end, decay: 8.0 }
    }

    fn admits(self, approach: Approach, x: f64) -> bool {
        match self {
            Window::Full => true,
            Window::SupportAware { support_end, decay } => match approach {
                Approach::PToOne => (x - 1.0) * support_end.ln() >= decay,
                Approach::TToInfinity => x <= support_end,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitCurve {
    approach: Approach,
    abscissae: Vec<f64>,
    ordinates: Vec<f64>,
    admissible: usize,
    monotonicity: Monotonicity,
    method: Extrapolation,
    estimate: f64,
}

impl LimitCurve {
    /// Builds the curve and its estimate. Abscissae must be strictly
    /// monotone in the approach direction (`p` descending and `> 1`, `t`
    /// ascending and `> 1`). `nonnegative` clamps an extrapolated value at 0.
    pub fn new(
        approach: Approach,
        abscissae: Vec<f64>,
        ordinates: Vec<f64>,
        window: Window,
        nonnegative: bool,
    ) -> Result<Self> {
        if abscissae.is_empty() {
            return Err(Error::EmptyGrid("limit curve needs at least one point"));
        }
        if abscissae.len() != ordinates.len() {
            return Err(domain("abscissae and ordinates differ in length", ordinates.len() as f64));
        }
        for &x in &abscissae {
            if !(x > 1.0) || !x.is_finite() {
                return Err(domain("curve abscissa must be finite and exceed 1", x));
            }
        }
        for w in abscissae.windows(2) {
            let ordered = match approach {
                Approach::PToOne => w[1] < w[0],
                Approach::TToInfinity => w[1] > w[0],
            };
            if !ordered {
                return Err(domain("curve abscissae are not strictly monotone toward the limit", w[1]));
            }
        }
        let admissible = abscissae.iter().take_while(|&&x| window.admits(approach, x)).count();

        let mut curve = LimitCurve {
            approach,
            abscissae,
            ordinates,
            admissible,
            monotonicity: Monotonicity::Constant,
            method: Extrapolation::None,
            estimate: 0.0,
        };
        curve.monotonicity = monotonicity(curve.admissible_ordinates());
        let (method, estimate) = curve.estimate_limit(nonnegative);
        curve.method = method;
        curve.estimate = estimate;
        Ok(curve)
    }

    pub fn approach(&self) -> Approach {
        self.approach
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    /// Number of leading points admitted by the window.
    pub fn admissible_len(&self) -> usize {
        self.admissible
    }

    pub fn admissible_ordinates(&self) -> &[f64] {
        &self.ordinates[..self.admissible]
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn method(&self) -> Extrapolation {
        self.method
    }

    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    /// Last admissible point (or the last point if none is admissible).
    pub fn last(&self) -> (f64, f64) {
        let i = self.admissible.max(1) - 1;
        (self.abscissae[i], self.ordinates[i])
    }

    /// Extrapolation variable, vanishing in the limit.
    fn h(&self, x: f64) -> f64 {
        match self.approach {
            Approach::PToOne => x - 1.0,
            Approach::TToInfinity => 1.0 / x.ln(),
        }
    }

    fn estimate_limit(&self, nonnegative: bool) -> (Extrapolation, f64) {
        let n = self.admissible;
        let (xs, ys) = if n == 0 {
            (&self.abscissae[..], &self.ordinates[..])
        } else {
            (&self.abscissae[..n], &self.ordinates[..n])
        };
        let m = ys.len();

        if n >= PLATEAU_POINTS {
            let tail = &ys[m - PLATEAU_POINTS..];
            let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
            let scale = tail.iter().fold(0.0f64, |acc, y| acc.max(y.abs()));
            if hi - lo <= PLATEAU_TOLERANCE * scale {
                let mean = tail.iter().sum::<f64>() / PLATEAU_POINTS as f64;
                return (Extrapolation::PlateauMean, mean);
            }
        }

        if n >= 3 {
            // an oscillating curve can end on three monotone points; demand the whole tail half
            let tail = monotonicity(&ys[m - (m - m / 2).max(3)..]);
            let y = [ys[m - 3], ys[m - 2], ys[m - 1]];
            let h = [self.h(xs[m - 3]), self.h(xs[m - 2]), self.h(xs[m - 1])];
            if tail != Monotonicity::Mixed {
                let v = lagrange_at_zero(h, y);
                if v.is_finite() {
                    let v = if nonnegative { v.max(0.0) } else { v };
                    return (Extrapolation::LastThreeRichardson, v);
                }
            }
        }

        let start = m / 2;
        let sup = ys[start..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (Extrapolation::None, sup)
    }
}

fn lagrange_at_zero(h: [f64; 3], y: [f64; 3]) -> f64 {
    let mut v = 0.0;
    for i in 0..3 {
        let mut l = 1.0;
        for j in 0..3 {
            if i != j {
                l *= h[j] / (h[j] - h[i]);
            }
        }
        v += l * y[i];
    }
    v
}

fn monotonicity(ys: &[f64]) -> Monotonicity {
    let (mut up, mut down) = (false, false);
    for w in ys.windows(2) {
        if w[1] > w[0] {
            up = true;
        } else if w[1] < w[0] {
            down = true;
        }
    }
    match (up, down) {
        (false, false) => Monotonicity::Constant,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (true, true) => Monotonicity::Mixed,
    }
}

/// `p_m = 1 + 2^{-m}` for `m = first ..= last`, descending toward 1.
pub fn dyadic_p_grid(first: u32, last: u32) -> Vec<f64> {
    (first..=last).map(|m| 1.0 + libm::ldexp(1.0, -(m as i32))).collect()
}

/// `count` points geometrically spaced from `start` to `stop` (both > 0).
pub fn geometric_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::EmptyGrid("geometric grid needs a positive count"));
    }
    if !(start > 0.0) || !(stop > 0.0) || !start.is_finite() || !stop.is_finite() {
        return Err(domain("geometric grid endpoints must be positive and finite", start.min(stop)));
    }
    if count == 1 {
        return Ok(alloc::vec![start]);
    }
    let (ls, le) = (start.ln(), stop.ln());
    let step = (le - ls) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| match i {
            0 => start,
            _ if i == count - 1 => stop,
            _ => (ls + step * i as f64).exp(),
        })
        .collect())
}
