//! Littlewood–Paley decomposition on the circle with triangular windows.
//!
//! `W_0 = 1 + z`; for `n >= 1`, `W_n` has coefficient 1 at `2^n`, vanishes
//! outside the open interval `(2^{n-1}, 2^{n+1})` and is linear in between.
//! Adjacent ramps sum to 1, so `f = Σ_n f * W_n` coefficientwise.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::domain;
use crate::rearrange::MeasuredSamples;
use crate::symbols::{eval_on_circle_grid, LacunarySpec, SymbolSeries};
use crate::{Error, Exponent, Result};

/// Coefficients `a_{nk}` of `W_n` on their support.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadicWindow {
    n: u32,
    first: usize,
    weights: Vec<f64>,
}

impl DyadicWindow {
    pub fn index(&self) -> u32 {
        self.n
    }

    /// Frequencies `k` with `a_{nk} > 0`.
    pub fn support(&self) -> core::ops::Range<usize> {
        self.first..self.first + self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `a_{nk}`, zero off the support.
    pub fn weight(&self, k: usize) -> f64 {
        k.checked_sub(self.first).and_then(|i| self.weights.get(i)).copied().unwrap_or(0.0)
    }
}

/// Largest block index whose window fits in `usize` frequencies.
pub const MAX_BLOCK_INDEX: u32 = usize::BITS - 2;

pub fn window_coeffs(n: u32) -> Result<DyadicWindow> {
    if n > MAX_BLOCK_INDEX {
        return Err(Error::DegreeOverflow(n as usize));
    }
    Ok(window_unchecked(n))
}

fn window_unchecked(n: u32) -> DyadicWindow {
    if n == 0 {
        return DyadicWindow { n, first: 0, weights: vec![1.0, 1.0] };
    }
    let lo = 1usize << (n - 1);
    let hi = 1usize << (n + 1);
    let weights = (lo + 1..hi).map(|k| ramp(n, k)).collect();
    DyadicWindow { n, first: lo + 1, weights }
}

fn ramp(n: u32, k: usize) -> f64 {
    let lo = 1usize << (n - 1);
    let mid = 1usize << n;
    let hi = 1usize << (n + 1);
    if k <= lo || k >= hi {
        0.0
    } else if k <= mid {
        (k - lo) as f64 / lo as f64
    } else {
        (hi - k) as f64 / mid as f64
    }
}

/// `a_{nk}` without materializing the window.
pub fn window_weight(n: u32, k: usize) -> f64 {
    match n {
        0 => {
            if k <= 1 {
                1.0
            } else {
                0.0
            }
        }
        _ if n > MAX_BLOCK_INDEX => 0.0,
        _ => ramp(n, k),
    }
}

/// The blocks `f * W_n`, `n = 0 … n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadicBlocks {
    blocks: Vec<SymbolSeries>,
    /// Nonzero coefficients above `2^{n_max}`, which are not reconstructed.
    dropped: usize,
}

impl DyadicBlocks {
    pub fn blocks(&self) -> &[SymbolSeries] {
        &self.blocks
    }

    pub fn n_max(&self) -> u32 {
        (self.blocks.len() - 1) as u32
    }

    pub fn dropped(&self) -> usize {
        self.dropped
    }

    /// `Σ_n` block coefficient `k`.
    pub fn reconstruct(&self) -> SymbolSeries {
        let degree = self.blocks.iter().map(SymbolSeries::degree).max().unwrap_or(0);
        let mut out = vec![Complex64::new(0.0, 0.0); degree + 1];
        for b in &self.blocks {
            for (slot, c) in out.iter_mut().zip(b.coeffs()) {
                *slot += c;
            }
        }
        SymbolSeries::new(out)
    }
}

/// Smallest `n` with `2^n >= degree`.
pub fn blocks_needed(degree: usize) -> u32 {
    if degree <= 1 {
        0
    } else {
        usize::BITS - (degree - 1).leading_zeros()
    }
}

/// Block `n` holds `a_{nk} f_k`. Coefficients above `2^{n_max}` are only
/// partly captured and are counted in [`DyadicBlocks::dropped`].
pub fn project_blocks(s: &SymbolSeries, n_max: u32) -> Result<DyadicBlocks> {
    if n_max > MAX_BLOCK_INDEX {
        return Err(Error::DegreeOverflow(n_max as usize));
    }
    let deg = s.degree();
    let mut blocks = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let w = window_unchecked(n);
        let top = (w.support().end - 1).min(deg);
        let coeffs: Vec<Complex64> = (0..=top).map(|k| s.coeff(k) * w.weight(k)).collect();
        blocks.push(SymbolSeries::new(coeffs));
    }
    let limit = 1usize << n_max;
    let dropped = s.coeffs().iter().skip(limit + 1).filter(|c| **c != Complex64::new(0.0, 0.0)).count();
    Ok(DyadicBlocks { blocks, dropped })
}

/// Smallest power of two `>= 4 (degree + 1)`.
pub fn default_block_grid(b: &SymbolSeries) -> usize {
    (4 * (b.degree() + 1)).next_power_of_two()
}

/// `(mean over the grid of |b|^p)^{1/p}`.
pub fn block_lp_norm(b: &SymbolSeries, p: f64, grid_size: usize) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(domain("block L^p exponent must be finite and at least 1", p));
    }
    let required = 4 * (b.degree() + 1);
    if grid_size < required {
        return Err(Error::GridTooSmall { required, got: grid_size });
    }
    let values = eval_on_circle_grid(b, grid_size)?;
    Ok(lp_mean(values.iter().map(|z| z.norm()), p, grid_size))
}

fn lp_mean(abs: impl Iterator<Item = f64> + Clone, p: f64, count: usize) -> f64 {
    let scale = abs.clone().fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let mean = abs.map(|a| (a / scale).powf(p)).sum::<f64>() / count as f64;
    scale * mean.powf(1.0 / p)
}

/// `‖{2^{ns} ‖f * W_n‖_p}‖_{l^q}` with the default block grids.
pub fn dyadic_besov_norm(blocks: &DyadicBlocks, s: f64, p: f64, q: Exponent) -> Result<f64> {
    let mut terms = Vec::with_capacity(blocks.blocks.len());
    for (n, b) in blocks.blocks.iter().enumerate() {
        let norm = block_lp_norm(b, p, default_block_grid(b))?;
        terms.push((n as f64 * s * core::f64::consts::LN_2, norm));
    }
    lq_of_weighted(&terms, q)
}

/// The same norm for `Σ c_m z^{2^m}`, whose blocks are single characters of
/// modulus `c_n`. Works in the log domain, so it accepts specs far beyond any
/// dense degree.
pub fn lacunary_dyadic_besov_norm(spec: &LacunarySpec, s: f64, q: Exponent) -> Result<f64> {
    let terms: Vec<(f64, f64)> =
        spec.coeffs().iter().enumerate().map(|(n, c)| (n as f64 * s * core::f64::consts::LN_2 + c.ln(), 1.0)).collect();
    lq_of_weighted(&terms, q)
}

/// `l^q` norm of `exp(log_weight) · value` over the list, kept in logs.
fn lq_of_weighted(terms: &[(f64, f64)], q: Exponent) -> Result<f64> {
    let logs: Vec<f64> = terms.iter().filter(|(_, v)| *v > 0.0).map(|(lw, v)| lw + v.ln()).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if logs.is_empty() {
        return Ok(0.0);
    }
    match q {
        Exponent::Infinite => Ok(top.exp()),
        Exponent::Finite(q) => {
            if !(q >= 1.0) {
                return Err(domain("l^q exponent must be at least 1", q));
            }
            let sum: f64 = logs.iter().map(|l| (q * (l - top)).exp()).sum();
            Ok((top + sum.ln() / q).exp())
        }
    }
}

/// Per-block grid sizes for [`phi_samples`]: `g_n = next_pow2(oversample · 2^{n+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridPolicy {
    pub oversample: usize,
}

impl Default for GridPolicy {
    fn default() -> Self {
        GridPolicy { oversample: 4 }
    }
}

impl GridPolicy {
    pub fn grid_for(&self, n: u32) -> usize {
        (self.oversample << (n + 1)).next_power_of_two()
    }
}

/// `φ_f(θ, n) = (f * W_n)(e^{iθ})` sampled on `T × {0 … n_max}` with mass
/// `2^n / g_n` per node.
pub fn phi_samples(blocks: &DyadicBlocks, policy: GridPolicy) -> Result<MeasuredSamples> {
    if policy.oversample < 4 {
        return Err(domain("phi sample oversampling must be at least 4", policy.oversample as f64));
    }
    let mut values = Vec::new();
    let mut masses = Vec::new();
    for (n, b) in blocks.blocks.iter().enumerate() {
        let g = policy.grid_for(n as u32);
        let samples = eval_on_circle_grid(b, g)?;
        let mass = libm::ldexp(1.0, n as i32) / g as f64;
        values.extend(samples.iter().map(|z| z.norm()));
        masses.extend(core::iter::repeat_n(mass, g));
    }
    MeasuredSamples::new(values, masses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{lacunary_to_series, monomial_symbol};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn window_examples() {
        let w = window_coeffs(2).unwrap();
        assert_eq!(w.support(), 3..8);
        assert_eq!(w.weights(), &[0.5, 1.0, 0.75, 0.5, 0.25]);
        let w0 = window_coeffs(0).unwrap();
        assert_eq!(w0.weights(), &[1.0, 1.0]);
        assert_eq!(w0.weight(2), 0.0);
        assert_eq!(window_coeffs(1).unwrap().weight(1), 0.0);
    }

    #[test]
    fn windows_partition_unity() {
        for n in 1..12u32 {
            for k in 1usize << n..=1usize << (n + 1) {
                assert_eq!(window_weight(n, k) + window_weight(n + 1, k), 1.0, "n={n} k={k}");
            }
        }
        for k in 1..5000usize {
            let total: f64 = (0..16).map(|n| window_weight(n, k)).sum();
            assert_eq!(total, 1.0, "k={k}");
        }
        assert_eq!(window_weight(0, 0), 1.0);
    }

    #[test]
    fn projection_examples() {
        let b = project_blocks(&monomial_symbol(4, c(1.0)), 3).unwrap();
        for (n, blk) in b.blocks().iter().enumerate() {
            if n == 2 {
                assert_eq!(blk.coeff(4), c(1.0));
            } else {
                assert!(blk.is_zero(), "n={n}");
            }
        }
        let b = project_blocks(&monomial_symbol(3, c(1.0)), 2).unwrap();
        assert_eq!(b.blocks()[1].coeff(3), c(0.5));
        assert_eq!(b.blocks()[2].coeff(3), c(0.5));
        assert_eq!(b.reconstruct().coeff(3), c(1.0));
        let b = project_blocks(&SymbolSeries::from_real(&[1.0]), 0).unwrap();
        assert_eq!(b.blocks()[0].coeffs(), &[c(1.0)]);
        assert_eq!(b.dropped(), 0);
        let b = project_blocks(&monomial_symbol(9, c(1.0)), 3).unwrap();
        assert_eq!(b.dropped(), 1);
    }

    #[test]
    fn blocks_needed_covers_degree() {
        assert_eq!(blocks_needed(0), 0);
        assert_eq!(blocks_needed(1), 0);
        assert_eq!(blocks_needed(2), 1);
        assert_eq!(blocks_needed(4), 2);
        assert_eq!(blocks_needed(5), 3);
        for d in 1..300usize {
            assert!(1usize << blocks_needed(d) >= d);
        }
    }

    #[test]
    fn block_norm_examples() {
        for n in 0..5 {
            let b = monomial_symbol(1 << n, Complex64::new(0.3, -0.4));
            for p in [1.0, 1.5, 2.0, 7.0] {
                assert!((block_lp_norm(&b, p, default_block_grid(&b)).unwrap() - 0.5).abs() < 1e-14);
            }
        }
        let b = SymbolSeries::from_real(&[1.0, 1.0]);
        assert!((block_lp_norm(&b, 2.0, 8).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        let inf = block_lp_norm(&b, 64.0, 1024).unwrap();
        assert!((inf - 2.0).abs() < 0.1, "inf={inf}");
        assert_eq!(block_lp_norm(&b, 2.0, 4), Err(Error::GridTooSmall { required: 8, got: 4 }));
        assert!(block_lp_norm(&b, 0.5, 8).is_err());
    }

    #[test]
    fn besov_examples() {
        let b = project_blocks(&monomial_symbol(4, c(1.0)), 3).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0] {
            let v = dyadic_besov_norm(&b, 1.0 / p, p, Exponent::Finite(p)).unwrap();
            assert!((v - 2f64.powf(2.0 / p)).abs() < 1e-13);
        }
        let spec = LacunarySpec::from_f64(&[1.0, 0.6, 0.5, 0.2, 0.05]).unwrap();
        let f = lacunary_to_series(&spec).unwrap();
        let b = project_blocks(&f, spec.max_index() as u32).unwrap();
        for p in [1.0, 1.25, 2.0] {
            let expect: f64 = spec
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| 2f64.powi(n as i32) * c.to_f64().powf(p))
                .sum::<f64>()
                .powf(1.0 / p);
            let dense = dyadic_besov_norm(&b, 1.0 / p, p, Exponent::Finite(p)).unwrap();
            let closed = lacunary_dyadic_besov_norm(&spec, 1.0 / p, Exponent::Finite(p)).unwrap();
            assert!((dense - expect).abs() < 1e-12 * expect);
            assert!((closed - expect).abs() < 1e-12 * expect);
        }
        let zero = project_blocks(&SymbolSeries::zero(8), 3).unwrap();
        assert_eq!(dyadic_besov_norm(&zero, 0.5, 2.0, Exponent::Infinite).unwrap(), 0.0);
    }

    #[test]
    fn phi_samples_of_lacunary_symbol() {
        let spec = LacunarySpec::from_f64(&[1.0, 0.5, 0.25, 0.2]).unwrap();
        let b = project_blocks(&lacunary_to_series(&spec).unwrap(), 3).unwrap();
        let s = phi_samples(&b, GridPolicy::default()).unwrap();
        let mut offset = 0;
        for n in 0..4u32 {
            let g = GridPolicy::default().grid_for(n);
            for i in offset..offset + g {
                assert!((s.values()[i] - spec.coeffs()[n as usize].to_f64()).abs() < 1e-15);
                assert_eq!(s.masses()[i], 2f64.powi(n as i32) / g as f64);
            }
            offset += g;
        }
        assert_eq!(s.total_mass(), 15.0);
        assert!(phi_samples(&b, GridPolicy { oversample: 2 }).is_err());
    }
}
