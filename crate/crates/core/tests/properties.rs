mod common;

use hardy_dixmier::curve::{dyadic_p_grid, geometric_grid};
use hardy_dixmier::discquad::{besov_seminorm_integral, DiscGrid};
use hardy_dixmier::dixmier::{
    max_demo_k, nonmeasurability_demo, ppb_identity_check, sigma_mean_closed_form, CheckWindow, SigmaMeanParams,
};
use hardy_dixmier::dyadic::{
    block_lp_norm, blocks_needed, default_block_grid, dyadic_besov_norm, project_blocks, window_weight,
};
use hardy_dixmier::hankel::{
    bergman_hankel_spectrum, hankel_matrix, schatten_lorentz, schatten_norm, singular_values, DEFAULT_SVD_CAP,
};
use hardy_dixmier::rearrange::{distribution, rearrange, reciprocal_step, MeasuredSamples, StepFunction};
use hardy_dixmier::symbols::{
    circle_grid_coefficients, derivative_series, eval_on_circle_grid, gap_example, sigma_example, SymbolSeries,
};
use hardy_dixmier::{Complex64, Exponent};
use proptest::prelude::*;

fn max_coeff_diff(a: &SymbolSeries, b: &SymbolSeries) -> f64 {
    let d = a.degree().max(b.degree());
    (0..=d).map(|n| (a.coeff(n) - b.coeff(n)).norm()).fold(0.0, f64::max)
}

fn cloud() -> impl Strategy<Value = MeasuredSamples> {
    prop::collection::vec((0.0f64..10.0, 0.01f64..5.0), 1..60).prop_map(|v| MeasuredSamples::from_pairs(&v).unwrap())
}

/// A symbol whose `k`-th derivative is `Π (z - z_i)` with every root outside
/// the closed disc, so that `|f^{(k)}|^p` is smooth on every circle.
fn zero_free_derivative(roots: &[(f64, f64)], k: usize) -> SymbolSeries {
    let mut g = vec![Complex64::new(1.0, 0.0)];
    for &(rho, theta) in roots {
        let z = Complex64::from_polar(rho, theta);
        let mut next = vec![Complex64::new(0.0, 0.0); g.len() + 1];
        for (n, c) in g.iter().enumerate() {
            next[n + 1] += c;
            next[n] -= c * z;
        }
        g = next;
    }
    let mut f = vec![Complex64::new(0.0, 0.0); g.len() + k];
    for (n, c) in g.iter().enumerate() {
        let falling: f64 = (n + 1..=n + k).map(|m| m as f64).product();
        f[n + k] = c / falling;
    }
    SymbolSeries::new(f)
}

fn step_cloud(h: &StepFunction) -> MeasuredSamples {
    let b = h.breakpoints();
    let masses = b.windows(2).map(|w| w[1] - w[0]).collect();
    MeasuredSamples::new(h.values().to_vec(), masses).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn derivative_is_linear(f in common::symbol(40), g in common::symbol(40),
                            a in (-2.0f64..2.0, -2.0f64..2.0), b in (-2.0f64..2.0, -2.0f64..2.0),
                            order in 1usize..4) {
        let (a, b) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        let lhs = derivative_series(&SymbolSeries::linear_combination(a, &f, b, &g), order).unwrap();
        let rhs = SymbolSeries::linear_combination(
            a, &derivative_series(&f, order).unwrap(), b, &derivative_series(&g, order).unwrap());
        let scale = (0..=rhs.degree()).map(|n| rhs.coeff(n).norm()).fold(1.0, f64::max);
        prop_assert!(max_coeff_diff(&lhs, &rhs) <= 1e-13 * scale);
    }

    #[test]
    fn circle_grid_round_trip(f in common::symbol(120), extra in 0u32..3) {
        let m = (2 * (f.degree() + 1)).next_power_of_two() << extra;
        let back = circle_grid_coefficients(&eval_on_circle_grid(&f, m).unwrap(), f.degree()).unwrap();
        prop_assert!(max_coeff_diff(&back, &f) <= 1e-12);
    }

    #[test]
    fn dyadic_reconstruction(f in common::symbol(256)) {
        common::dyadic_reconstruction(&f).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn circle_parseval(f in common::symbol(256)) {
        common::parseval(&f).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn block_parseval(f in common::symbol(256)) {
        let blocks = project_blocks(&f, blocks_needed(f.degree())).unwrap();
        let mut energy = 0.0;
        for b in blocks.blocks() {
            let exact: f64 = b.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let v = block_lp_norm(b, 2.0, default_block_grid(b)).unwrap();
            prop_assert!((v - exact).abs() <= 1e-10 * exact.max(1.0));
            energy += exact * exact;
        }
        let norm = dyadic_besov_norm(&blocks, 0.0, 2.0, Exponent::Finite(2.0)).unwrap();
        prop_assert!((norm - energy.sqrt()).abs() <= 1e-10 * energy.sqrt().max(1.0));
    }

    #[test]
    fn rotation_invariance(roots in prop::collection::vec((1.25f64..3.0, -3.2f64..3.2), 0..8),
                           alpha in -10.0f64..10.0, p in 1.2f64..2.0, k in 1usize..3) {
        let f = zero_free_derivative(&roots, k);
        let grid = DiscGrid::default();
        let a = besov_seminorm_integral(&f, k, p, &grid).unwrap();
        let b = besov_seminorm_integral(&f.rotated(alpha), k, p, &grid).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a, "{} vs {}", a, b);
    }

    #[test]
    fn rotation_invariance_at_p_two(f in common::symbol(16), alpha in -10.0f64..10.0, k in 1usize..3) {
        let grid = DiscGrid::new(48, 64).unwrap();
        let a = besov_seminorm_integral(&f, k, 2.0, &grid).unwrap();
        let b = besov_seminorm_integral(&f.rotated(alpha), k, 2.0, &grid).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.max(1e-300), "{} vs {}", a, b);
    }

    #[test]
    fn mass_and_lp_exact(s in common::dyadic_cloud()) {
        common::mass_and_lp_preserved(&s).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn rearrange_idempotent(s in cloud()) {
        let h = rearrange(&s).unwrap();
        let again = rearrange(&step_cloud(&h)).unwrap();
        prop_assert_eq!(again.values(), h.values());
        for (x, y) in again.ends().iter().zip(h.ends()) {
            prop_assert!((x - y).abs() <= 1e-12 * y);
        }
    }

    #[test]
    fn galois_relation(s in cloud(), lambda in 0.0f64..11.0) {
        let h = rearrange(&s).unwrap();
        prop_assume!(!h.values().contains(&lambda));
        let mu = distribution(&h, lambda);
        prop_assert!(h.eval(mu) <= lambda);
        if mu > 0.0 {
            prop_assert!(h.eval(mu - 1e-9 * mu.max(1.0)) > lambda);
        }
    }

    #[test]
    fn tmi_sandwich(sp in common::spectrum()) {
        common::tmi_sandwich(&sp).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn hankel_finite_rank(f in common::symbol(24)) {
        let d = f.degree().max(1);
        let a = singular_values(&hankel_matrix(&f, d).unwrap(), DEFAULT_SVD_CAP).unwrap();
        let b = singular_values(&hankel_matrix(&f, 2 * d).unwrap(), DEFAULT_SVD_CAP).unwrap();
        let scale = a.values().first().copied().unwrap_or(0.0).max(1.0);
        for j in 0..b.len() {
            let x = a.values().get(j).copied().unwrap_or(0.0);
            prop_assert!((x - b.values()[j]).abs() <= 1e-12 * scale, "j = {}", j);
        }
    }

    #[test]
    fn schatten_two_is_frobenius(f in common::symbol(40), n in 1usize..48) {
        let sp = singular_values(&hankel_matrix(&f, n).unwrap(), DEFAULT_SVD_CAP).unwrap();
        let mut frob = 0.0;
        for k in 0..n {
            for m in 0..n {
                frob += f.coeff(k + m + 1).norm_sqr();
            }
        }
        let s2 = schatten_norm(&sp, 2.0).unwrap().powi(2);
        prop_assert!((s2 - frob).abs() <= 1e-10 * frob.max(1.0));
    }

    #[test]
    fn partial_sums_below_weak_l1_bound(sp in common::spectrum()) {
        let weak = schatten_lorentz(&sp, 1.0, Exponent::Infinite).unwrap();
        let mut harmonic = 0.0;
        for (n, c) in sp.cumulative().iter().enumerate() {
            harmonic += 1.0 / (n + 1) as f64;
            prop_assert!(*c <= weak * harmonic * (1.0 + 1e-15 * (n + 1) as f64));
        }
    }

    #[test]
    fn bergman_gram_is_psd(f in common::symbol(8), which in 0usize..3) {
        let alpha = [0.0, 0.5, 2.0][which];
        let b = bergman_hankel_spectrum(&f, alpha, 64, DEFAULT_SVD_CAP);
        prop_assert!(b.is_ok(), "{:?}", b.err());
    }

    #[test]
    fn sigma_example_tail_is_nonincreasing(a in 1.0f64..4.0, frac in 0.05f64..0.9, base in 1.5f64..4.0) {
        let ex = sigma_example(a, frac * a, base, 64);
        prop_assume!(ex.is_ok());
        let ex = ex.unwrap();
        let c = ex.spec.coeffs();
        for j in ex.j0..c.len() {
            prop_assert!(c[j].is_positive());
            if j + 1 < c.len() {
                prop_assert!(c[j + 1] <= c[j]);
            }
        }
    }
}

#[test]
fn window_partition_of_unity() {
    for k in 0..=4096usize {
        let mut sum = 0.0;
        for n in 0..=14 {
            let a = window_weight(n, k);
            assert!((0.0..=1.0).contains(&a));
            sum += a;
        }
        assert!((sum - 1.0).abs() < 1e-15, "k = {k}: {sum}");
    }
    assert_eq!(window_weight(1, 1), 0.0);
}

#[test]
fn gap_examples_are_nonincreasing() {
    for k_max in 1..=40 {
        let spec = gap_example(k_max).unwrap();
        assert!(spec.coeffs().windows(2).all(|w| w[1] <= w[0]), "k_max = {k_max}");
    }
}

#[test]
fn scan_and_log_average_agree_when_limit_exists() {
    for c in [1.0, 5.0] {
        let h = reciprocal_step(c, 1e-2, 1e250, 4096).unwrap();
        let r_grid: Vec<f64> = dyadic_p_grid(1, 20).iter().map(|p| 1.0 / (p - 1.0)).collect();
        let t_grid = geometric_grid(10.0, h.support_end(), 80).unwrap();
        let r = ppb_identity_check(&h, &r_grid, &t_grid, CheckWindow::Truncated).unwrap();
        let gap = (r.power_limit - r.log_limit).abs() / r.log_limit;
        assert!(gap < 0.1, "C = {c}: {} vs {}", r.power_limit, r.log_limit);
        assert!(r.pass(), "{r:?}");
    }
}

#[test]
fn sigma_mean_is_cauchy_along_maxima() {
    let params = SigmaMeanParams::from_delta(2.0, 0.25, 0.0).unwrap();
    let l = params.base().ln();
    let at = |k: u32| sigma_mean_closed_form(&params, (2.0 * k as f64 * std::f64::consts::PI * l).exp()).unwrap();
    for k in 5..max_demo_k(0.25).unwrap() {
        let d = (at(k + 1) - at(k)).abs();
        assert!(d < 1.0 / k as f64, "k = {k}: {d}");
    }
}

#[test]
fn demo_ratio_converges_monotonically() {
    for delta in [0.25, 0.5, 0.75] {
        let r = nonmeasurability_demo(delta, 2.0, 1, max_demo_k(delta).unwrap()).unwrap();
        assert!(r.monotone, "delta = {delta}");
        assert!(r.pass());
    }
}
