//! Strategies and checks shared by the property suite and the acceptance run.

#![allow(dead_code)]

use hardy_dixmier::dixmier::log_average;
use hardy_dixmier::dyadic::{blocks_needed, project_blocks};
use hardy_dixmier::hankel::{hankel_matrix, partial_sum_step, singular_values, SingularSpectrum, DEFAULT_SVD_CAP};
use hardy_dixmier::rearrange::{lp_norm, rearrange, MeasuredSamples};
use hardy_dixmier::symbols::{eval_on_circle_grid, SymbolSeries};
use hardy_dixmier::Complex64;
use proptest::prelude::*;

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn symbol(max_degree: usize) -> impl Strategy<Value = SymbolSeries> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=max_degree + 1)
        .prop_map(|c| SymbolSeries::new(c.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()))
}

/// Values `k/8` and masses `m/4` with small integers, so that every sum and
/// power below is exact in binary floating point.
pub fn dyadic_cloud() -> impl Strategy<Value = MeasuredSamples> {
    prop::collection::vec((0u32..=16, 1u32..=8), 1..40).prop_map(|v| {
        let (values, masses) = v.into_iter().map(|(k, m)| (k as f64 / 8.0, m as f64 / 4.0)).unzip();
        MeasuredSamples::new(values, masses).unwrap()
    })
}

/// Nonincreasing nonnegative spectra.
pub fn spectrum() -> impl Strategy<Value = SingularSpectrum> {
    prop::collection::vec(0.0f64..10.0, 3..200).prop_map(|v| SingularSpectrum::new(v).unwrap())
}

/// `∫ H = Σ v m` and `∫ H^p = Σ v^p m` for `p ∈ {1, 2, 3}`, compared bit for bit.
pub fn mass_and_lp_preserved(samples: &MeasuredSamples) -> Check {
    let h = rearrange(samples).map_err(|e| e.to_string())?;
    let mass: f64 = samples.values().iter().zip(samples.masses()).map(|(v, m)| v * m).sum();
    ensure(h.total_integral() == mass, || format!("mass {} != {}", h.total_integral(), mass))?;
    for p in [1.0, 2.0, 3.0] {
        let lhs = lp_norm(&h, p).map_err(|e| e.to_string())?;
        let rhs = samples.power_sum(p).powf(1.0 / p);
        ensure(lhs == rhs, || format!("L^{p}: {lhs} != {rhs}"))?;
    }
    Ok(())
}

pub fn dyadic_reconstruction(s: &SymbolSeries) -> Check {
    let blocks = project_blocks(s, blocks_needed(s.degree())).map_err(|e| e.to_string())?;
    let back = blocks.reconstruct();
    let err = (0..=s.degree()).map(|n| (back.coeff(n) - s.coeff(n)).norm()).fold(0.0, f64::max);
    ensure(err <= 1e-13, || format!("reconstruction error {err:e}"))
}

/// Mean of `|f|²` over the circle grid against `Σ |c_n|²`.
pub fn parseval(s: &SymbolSeries) -> Check {
    let m = (2 * (s.degree() + 1)).next_power_of_two();
    let vals = eval_on_circle_grid(s, m).map_err(|e| e.to_string())?;
    let mean = vals.iter().map(|z| z.norm_sqr()).sum::<f64>() / m as f64;
    let exact: f64 = s.coeffs().iter().map(|c| c.norm_sqr()).sum();
    let err = (mean - exact).abs() / exact.max(1.0);
    ensure(err <= 1e-10, || format!("Parseval error {err:e}"))
}

/// `Σ_{j<=n-1} s_j / ln n <= (1/ln n) ∫_0^n H <= Σ_{j<=n} s_j / ln(n-1)` at
/// every integer `3 <= n <= len`. The left side is an identity; it is allowed
/// the rounding of two differently ordered sums.
pub fn tmi_sandwich(sp: &SingularSpectrum) -> Check {
    let h = partial_sum_step(sp);
    let cum = sp.cumulative();
    for n in 3..=sp.len() {
        let la = log_average(&h, n as f64).map_err(|e| e.to_string())?;
        let lower = cum[n - 1] / (n as f64).ln();
        let upper = cum[n.min(sp.len() - 1)] / ((n - 1) as f64).ln();
        let slack = 4.0 * n as f64 * f64::EPSILON * lower;
        ensure(lower <= la + slack && la <= upper, || format!("n = {n}: {lower} <= {la} <= {upper} fails"))?;
    }
    Ok(())
}

/// `f = z + z²`: singular values `φ` and `1/φ`.
pub fn golden_ratio_hankel() -> Check {
    let f = SymbolSeries::from_real(&[0.0, 1.0, 1.0]);
    let sp = singular_values(&hankel_matrix(&f, 2).map_err(|e| e.to_string())?, DEFAULT_SVD_CAP)
        .map_err(|e| e.to_string())?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let s = sp.values();
    let err = (s[0] - phi).abs().max((s[1] - 1.0 / phi).abs());
    ensure(err <= 1e-12, || format!("golden-ratio error {err:e}"))
}
