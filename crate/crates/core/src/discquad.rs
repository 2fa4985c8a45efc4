//! Weighted area integrals over the unit disc.
//!
//! With `u = 1 - r²` the area measure becomes `½ du dθ`, so
//! `∫_D |g|^p (1-|z|²)^β dz = π ∫_0^1 u^β A(u) du` where `A(u)` is the angular
//! mean of `|g|^p` on the circle of radius `√(1-u)`. Angular means come from
//! an FFT of the radially scaled coefficients.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::curve::{Approach, LimitCurve, Window};
use crate::error::domain;
use crate::quadrature::{gauss_jacobi_unit, QuadratureRule};
use crate::rearrange::MeasuredSamples;
use crate::symbols::{derivative_series, eval_on_circle, SymbolSeries};
use crate::{Error, Result};

/// Gauss–Legendre nodes in `u ∈ (0,1)` (weights summing to 1) and an angular
/// grid of `M` points.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscGrid {
    radial: QuadratureRule,
    angular: usize,
}

impl DiscGrid {
    pub fn new(radial_order: usize, angular: usize) -> Result<Self> {
        if angular == 0 || !angular.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(angular));
        }
        let radial = gauss_jacobi_unit(radial_order, 0.0)?;
        Ok(DiscGrid { radial, angular })
    }

    pub fn radial_order(&self) -> usize {
        self.radial.len()
    }

    pub fn angular(&self) -> usize {
        self.angular
    }

    /// Nodes `u_i` and weights `W_i` of the radial rule.
    pub fn radial_rule(&self) -> &QuadratureRule {
        &self.radial
    }

    fn check_alias(&self, g: &SymbolSeries) -> Result<()> {
        let required = 2 * (g.degree() + 1);
        if self.angular < required {
            return Err(Error::GridTooSmall { required, got: self.angular });
        }
        Ok(())
    }
}

impl Default for DiscGrid {
    /// `R = 256`, `M = 1024`.
    fn default() -> Self {
        DiscGrid::new(256, 1024).expect("default disc grid")
    }
}

/// Mean of `|g|^p` over the circle of radius `r`.
fn angular_mean(g: &SymbolSeries, r: f64, p: f64, m: usize) -> Result<f64> {
    let values = eval_on_circle(g, r, m)?;
    Ok(values.iter().map(|z| pow_abs(z.norm(), p)).sum::<f64>() / m as f64)
}

fn pow_abs(a: f64, p: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else if p == 2.0 {
        a * a
    } else {
        a.powf(p)
    }
}

/// `∫_D |f^{(k)}(z)|^p (1-|z|²)^{kp-2} dz`, the `p`-th power of the seminorm.
///
/// The radial integral uses a Gauss–Jacobi rule for the weight `u^{kp-2}`, so
/// the boundary singularity for `kp < 2` is integrated exactly.
pub fn besov_seminorm_power(s: &SymbolSeries, k: usize, p: f64, grid: &DiscGrid) -> Result<f64> {
    if k == 0 {
        return Err(domain("derivative order k must be at least 1", 0.0));
    }
    if !(p * k as f64 > 1.0) || !p.is_finite() {
        return Err(domain("exponent p must exceed 1/k", p));
    }
    let g = derivative_series(s, k)?;
    grid.check_alias(&g)?;
    if g.is_zero() {
        return Ok(0.0);
    }
    let beta = k as f64 * p - 2.0;
    let rule = gauss_jacobi_unit(grid.radial_order(), beta)?;
    let mut acc = 0.0;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * angular_mean(&g, (1.0 - u).sqrt(), p, grid.angular)?;
    }
    Ok(core::f64::consts::PI * acc)
}

/// `‖f‖_{(k),p} = (∫_D |f^{(k)}|^p (1-|z|²)^{kp-2} dz)^{1/p}`.
pub fn besov_seminorm_integral(s: &SymbolSeries, k: usize, p: f64, grid: &DiscGrid) -> Result<f64> {
    Ok(besov_seminorm_power(s, k, p, grid)?.powf(1.0 / p))
}

/// `p ↦ (p-1) ‖f‖_{(k),p}^p` over `p_grid` (descending toward 1).
pub fn scaled_scan_integral(
    s: &SymbolSeries,
    k: usize,
    p_grid: &[f64],
    grid: &DiscGrid,
    window: Window,
) -> Result<LimitCurve> {
    let mut ordinates = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        if !(p > 1.0 && p <= 2.0) {
            return Err(domain("scan exponents must lie in (1, 2]", p));
        }
        ordinates.push((p - 1.0) * besov_seminorm_power(s, k, p, grid)?);
    }
    LimitCurve::new(Approach::PToOne, p_grid.to_vec(), ordinates, window, true)
}

/// Samples of `(1-|z|²)² f''(z)` at the grid nodes, each carrying the
/// quadrature mass `π W_i / (M u_i²)` of `(1-|z|²)^{-2} dz`.
pub fn second_derivative_samples(s: &SymbolSeries, grid: &DiscGrid) -> Result<MeasuredSamples> {
    let g = derivative_series(s, 2)?;
    grid.check_alias(&g)?;
    let m = grid.angular;
    let n = grid.radial.len() * m;
    let mut values = Vec::with_capacity(n);
    let mut masses = Vec::with_capacity(n);
    for (&u, &w) in grid.radial.nodes.iter().zip(&grid.radial.weights) {
        let mass = core::f64::consts::PI * w / (m as f64 * u * u);
        if g.is_zero() {
            values.extend(core::iter::repeat_n(0.0, m));
        } else {
            let vals = eval_on_circle(&g, (1.0 - u).sqrt(), m)?;
            values.extend(vals.iter().map(|z| u * u * z.norm()));
        }
        masses.extend(core::iter::repeat_n(mass, m));
    }
    MeasuredSamples::new(values, masses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::dyadic_p_grid;
    use crate::symbols::monomial_symbol;
    use num_complex::Complex64;

    fn lgamma(x: f64) -> f64 {
        libm::lgamma(x)
    }

    fn fixture(k: usize) -> SymbolSeries {
        monomial_symbol(k + 1, Complex64::new(1.0 / (k as f64 + 1.0), 0.0))
    }

    /// `π Γ(kp/2+1) Γ(p-1) / Γ(kp/2+p)`
    fn order_one(k: f64, p: f64) -> f64 {
        core::f64::consts::PI * (lgamma(k * p / 2.0 + 1.0) + lgamma(p - 1.0) - lgamma(k * p / 2.0 + p)).exp()
    }

    #[test]
    fn unit_integrand() {
        let grid = DiscGrid::new(32, 16).unwrap();
        let v = besov_seminorm_power(&SymbolSeries::from_real(&[0.0, 1.0]), 1, 2.0, &grid).unwrap();
        assert!((v - core::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn order_one_gamma_formula() {
        let grid = DiscGrid::new(64, 64).unwrap();
        let v = besov_seminorm_power(&fixture(4), 1, 1.5, &grid).unwrap();
        let exact = order_one(4.0, 1.5);
        assert!(((v - exact) / exact).abs() < 1e-10, "{v} vs {exact}");
    }

    #[test]
    fn domain_errors() {
        let grid = DiscGrid::new(8, 16).unwrap();
        let f = fixture(2);
        assert!(besov_seminorm_power(&f, 1, 1.0, &grid).is_err());
        assert!(besov_seminorm_power(&f, 2, 0.5, &grid).is_err());
        assert!(besov_seminorm_power(&f, 2, 0.51, &grid).is_ok());
        assert!(besov_seminorm_power(&f, 0, 2.0, &grid).is_err());
        assert!(DiscGrid::new(8, 12).is_err());
        let big = monomial_symbol(20, Complex64::new(1.0, 0.0));
        assert!(matches!(besov_seminorm_power(&big, 1, 2.0, &grid), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn zero_symbol_scan() {
        let grid = DiscGrid::new(16, 16).unwrap();
        let c = scaled_scan_integral(&SymbolSeries::zero(3), 2, &dyadic_p_grid(1, 6), &grid, Window::Full).unwrap();
        assert!(c.ordinates().iter().all(|&y| y == 0.0));
        assert_eq!(c.estimate(), 0.0);
    }

    #[test]
    fn linear_symbol_has_zero_f_samples() {
        let grid = DiscGrid::new(8, 8).unwrap();
        let s = second_derivative_samples(&SymbolSeries::from_real(&[1.0, 2.0]), &grid).unwrap();
        assert_eq!(s.len(), 64);
        assert!(s.values().iter().all(|&v| v == 0.0));
    }
}
