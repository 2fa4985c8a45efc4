//! Hankel truncations on the Hardy space, Bergman Hankel spectra through the
//! Toeplitz identity `H*H = T_{|f|²} - T_f T_{f̄}`, and singular-value norms.

use alloc::vec;
use alloc::vec::Vec;

use faer::{c64, Mat, Side};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::domain;
use crate::rearrange::StepFunction;
use crate::symbols::SymbolSeries;
use crate::{Error, Exponent, Result};

/// Default bound on the dimension handed to a dense decomposition.
pub const DEFAULT_SVD_CAP: usize = 8192;

/// Relative size below which a negative Gram eigenvalue is treated as rounding.
pub const GRAM_NEGATIVE_TOLERANCE: f64 = 1e-10;

/// `N × N` section of `H_{f̄}`: `entry(k, m) = conj(f_{k+m+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelTruncation {
    n: usize,
    /// `conj(f_{i+1})` for `i = 0 … 2N-2`
    anti: Vec<Complex64>,
    degree: usize,
}

impl HankelTruncation {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn source_degree(&self) -> usize {
        self.degree
    }

    pub fn entry(&self, k: usize, m: usize) -> Complex64 {
        self.anti[k + m]
    }

    /// Dimension of the top-left block outside which every entry vanishes.
    pub fn active_dim(&self) -> usize {
        self.anti.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)).map_or(0, |i| (i + 1).min(self.n))
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.n {
            for m in 0..self.n {
                acc += self.entry(k, m).norm_sqr();
            }
        }
        acc
    }
}

pub fn hankel_matrix(s: &SymbolSeries, n: usize) -> Result<HankelTruncation> {
    if n == 0 {
        return Err(domain("Hankel dimension must be at least 1", 0.0));
    }
    let anti = (0..2 * n - 1).map(|i| s.coeff(i + 1).conj()).collect();
    Ok(HankelTruncation { n, anti, degree: s.degree() })
}

/// Nonincreasing nonnegative singular values.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum {
    s: Vec<f64>,
    clipped: usize,
}

impl SingularSpectrum {
    /// Sorts descending. Negative entries above `-1e-14 · max` are clipped to 0
    /// and counted; anything more negative is rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSamples("singular values must be finite".into()));
        }
        let top = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut clipped = 0;
        for v in values.iter_mut() {
            if *v < 0.0 {
                if *v < -1e-14 * top.max(f64::MIN_POSITIVE) {
                    return Err(Error::InvalidSamples(alloc::format!("negative singular value {v}")));
                }
                *v = 0.0;
                clipped += 1;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(SingularSpectrum { s: values, clipped })
    }

    fn from_sorted(s: Vec<f64>, clipped: usize) -> Self {
        SingularSpectrum { s, clipped }
    }

    pub fn values(&self) -> &[f64] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Number of tiny negative values (or Gram eigenvalues) set to zero.
    pub fn clipped(&self) -> usize {
        self.clipped
    }

    /// `Σ_{j<=n} s_j` for every `n`.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.s
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect()
    }

    /// `Σ_{j<=n} s_j / ln(n+2)` for every `n`.
    pub fn dixmier_curve(&self) -> Vec<f64> {
        self.cumulative().iter().enumerate().map(|(n, c)| c / ((n + 2) as f64).ln()).collect()
    }
}

/// If all entries share one phase `e^{iφ}`, returns `e^{-iφ}`.
fn common_phase(coeffs: &[Complex64]) -> Option<Complex64> {
    let top = coeffs.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm()))?;
    if top.norm() == 0.0 {
        return Some(Complex64::new(1.0, 0.0));
    }
    let rot = top.conj() / top.norm();
    let tol = 4.0 * f64::EPSILON * top.norm();
    coeffs.iter().all(|c| (c * rot).im.abs() <= tol).then_some(rot)
}

fn max_abs(m: impl Iterator<Item = f64>) -> f64 {
    m.fold(0.0, |a: f64, v| a.max(v.abs()))
}

/// Singular values of the truncation. Only the active top-left block is
/// decomposed; the rest of the spectrum is zero.
///
/// The matrix is complex symmetric. When its entries share a phase it is a
/// rotated real symmetric matrix, and the singular values are the moduli of
/// its eigenvalues.
pub fn singular_values(h: &HankelTruncation, cap: usize) -> Result<SingularSpectrum> {
    if h.n > cap {
        return Err(Error::MatrixTooLarge { n: h.n, cap });
    }
    let d = h.active_dim();
    let mut out = vec![0.0; h.n];
    if d == 0 {
        return Ok(SingularSpectrum::from_sorted(out, 0));
    }
    let block = &h.anti[..2 * d - 1];
    let fail = || Error::Decomposition { n: d, max_abs: max_abs(block.iter().map(|c| c.norm())) };
    let values: Vec<f64> = match common_phase(block) {
        Some(rot) => {
            let m = Mat::<f64>::from_fn(d, d, |i, j| (block[i + j] * rot).re);
            let ev = m.self_adjoint_eigenvalues(Side::Lower).map_err(|_| fail())?;
            ev.into_iter().map(f64::abs).collect()
        }
        None => {
            let m = Mat::<c64>::from_fn(d, d, |i, j| block[i + j]);
            m.singular_values().map_err(|_| fail())?
        }
    };
    out[..d].copy_from_slice(&values);
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(SingularSpectrum::from_sorted(out, 0))
}

/// `(Σ s_j^p)^{1/p}`.
pub fn schatten_norm(sp: &SingularSpectrum, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(domain("Schatten exponent must be positive and finite", p));
    }
    let top = sp.s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = sp.s.iter().map(|v| (v / top).powf(p)).sum();
    Ok(top * sum.powf(1.0 / p))
}

/// `(Σ (j+1)^{q/p-1} s_j^q)^{1/q}`, or `sup_j (j+1)^{1/p} s_j` for `q = ∞`.
pub fn schatten_lorentz(sp: &SingularSpectrum, p: f64, q: Exponent) -> Result<f64> {
    if !(p > 0.0) {
        return Err(domain("Schatten-Lorentz exponent p must be positive", p));
    }
    match q {
        Exponent::Infinite => {
            Ok(sp.s.iter().enumerate().map(|(j, v)| ((j + 1) as f64).powf(1.0 / p) * v).fold(0.0, f64::max))
        }
        Exponent::Finite(q) => {
            if !(q > 0.0) {
                return Err(domain("Schatten-Lorentz exponent q must be positive", q));
            }
            let sum: f64 =
                sp.s.iter()
                    .enumerate()
                    .filter(|(_, v)| **v > 0.0)
                    .map(|(j, v)| ((j + 1) as f64).powf(q / p - 1.0) * v.powf(q))
                    .sum();
            Ok(sum.powf(1.0 / q))
        }
    }
}

/// `sup_n Σ_{j<=n} s_j / ln(n+2)` over the available indices.
pub fn dixmier_norm(sp: &SingularSpectrum) -> f64 {
    sp.dixmier_curve().into_iter().fold(0.0, f64::max)
}

/// `s_j` on `[j, j+1)`, with the trailing zero part of the spectrum dropped.
pub fn partial_sum_step(sp: &SingularSpectrum) -> StepFunction {
    let m = sp.s.iter().rposition(|v| *v > 0.0).map_or(0, |i| i + 1);
    let ends = (1..=m).map(|j| j as f64).collect();
    StepFunction::new(ends, sp.s[..m].to_vec()).expect("spectrum is sorted and finite")
}

/// Bergman spectrum with its truncation metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct BergmanSpectrum {
    pub spectrum: SingularSpectrum,
    pub alpha: f64,
    /// Dimension of the compressed Gram matrix.
    pub n: usize,
    /// Last index unaffected by the compression edge, `N - degree - 2`.
    pub reliable: usize,
    /// `(n + α + 3/2) s_n` at `n = reliable`: the coefficient `c` of an
    /// `s_n ≈ c / n` tail shaped like the `f = z` closed form.
    pub tail_coefficient: f64,
}

/// `w_m / w_n` for the weights `w_n = n! Γ(α+2) / Γ(n+α+2)`, as a product of
/// `|m - n|` factors `(j+1)/(j+α+2)`.
fn weight_ratio(m: usize, n: usize, alpha: f64) -> f64 {
    let (lo, hi, invert) = if m >= n { (n, m, false) } else { (m, n, true) };
    let r: f64 = (lo..hi).map(|j| (j as f64 + 1.0) / (j as f64 + alpha + 2.0)).product();
    if invert {
        1.0 / r
    } else {
        r
    }
}

/// Entry `(k, n)` of `T_{|f|²} - T_f T_{f̄}` in the orthonormal basis
/// `e_n = z^n / √w_n`:
/// `Σ_{a-b=k-n} f_a conj(f_b) [w_{n+a}/√(w_n w_k) - 1[n>=b] √(w_n w_k)/w_{n-b}]`.
fn gram_entry(f: &[Complex64], k: usize, n: usize, alpha: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, &fb) in f.iter().enumerate() {
        if fb == Complex64::new(0.0, 0.0) || k + b < n {
            continue;
        }
        let a = k + b - n;
        let fa = match f.get(a) {
            Some(&c) if c != Complex64::new(0.0, 0.0) => c,
            _ => continue,
        };
        let top = n + a;
        let mut t = (weight_ratio(top, n, alpha) * weight_ratio(top, k, alpha)).sqrt();
        if n >= b {
            t -= (weight_ratio(n, n - b, alpha) * weight_ratio(k, n - b, alpha)).sqrt();
        }
        acc += fa * fb.conj() * t;
    }
    acc
}

/// Singular values of the Bergman Hankel operator `H^{(α)}_{f̄}` from the
/// eigenvalues of the `N × N` compression of `H*H`.
///
/// Eigenvalues below `-1e-10 · max(1, λ_max)` are reported as an indefinite
/// Gram matrix; smaller negatives are clipped and counted.
pub fn bergman_hankel_spectrum(s: &SymbolSeries, alpha: f64, n: usize, cap: usize) -> Result<BergmanSpectrum> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(domain("Bergman weight alpha must exceed -1", alpha));
    }
    if n == 0 {
        return Err(domain("Bergman truncation must be at least 1", 0.0));
    }
    if n > cap {
        return Err(Error::MatrixTooLarge { n, cap });
    }
    let degree = s.effective_degree().unwrap_or(0);
    // the constant term commutes with everything and drops out of H
    let f: Vec<Complex64> = s.coeffs()[..=degree]
        .iter()
        .enumerate()
        .map(|(i, &c)| if i == 0 { Complex64::new(0.0, 0.0) } else { c })
        .collect();
    let nonzero = f.iter().filter(|c| **c != Complex64::new(0.0, 0.0)).count();

    let eigen: Vec<f64> =
        if nonzero == 0 {
            vec![0.0; n]
        } else if nonzero == 1 {
            // a monomial gives a diagonal Gram matrix
            (0..n).map(|i| gram_entry(&f, i, i, alpha).re).collect()
        } else {
            let band = degree;
            let fail = |g: f64| Error::Decomposition { n, max_abs: g };
            match common_phase(&f) {
                Some(rot) => {
                    let fr: Vec<Complex64> = f.iter().map(|c| c * rot).collect();
                    let g = Mat::<f64>::from_fn(n, n, |i, j| {
                        if i.abs_diff(j) > band {
                            0.0
                        } else {
                            gram_entry(&fr, i, j, alpha).re
                        }
                    });
                    let scale = g.norm_max();
                    g.self_adjoint_eigenvalues(Side::Lower).map_err(|_| fail(scale))?
                }
                None => {
                    let g = Mat::<c64>::from_fn(n, n, |i, j| {
                        if i.abs_diff(j) > band {
                            c64::new(0.0, 0.0)
                        } else {
                            gram_entry(&f, i, j, alpha)
                        }
                    });
                    let scale = g.norm_max();
                    g.self_adjoint_eigenvalues(Side::Lower).map_err(|_| fail(scale))?
                }
            }
        };

    let top = eigen.iter().copied().fold(0.0f64, f64::max);
    let floor = -GRAM_NEGATIVE_TOLERANCE * top.max(1.0);
    let mut clipped = 0;
    let mut sv = Vec::with_capacity(n);
    for &l in &eigen {
        if l < floor {
            return Err(Error::IndefiniteGram(l));
        }
        if l < 0.0 {
            clipped += 1;
            sv.push(0.0);
        } else {
            sv.push(l.sqrt());
        }
    }
    sv.sort_by(|a, b| b.total_cmp(a));
    let reliable = n.saturating_sub(degree + 2).max(1) - 1;
    let tail_coefficient = (reliable as f64 + alpha + 1.5) * sv[reliable];
    Ok(BergmanSpectrum { spectrum: SingularSpectrum::from_sorted(sv, clipped), alpha, n, reliable, tail_coefficient })
}

/// `√(α+1)/√((n+α+1)(n+α+2))`, the Bergman singular values for `f = z`.
pub fn bergman_monomial_closed_form(n: usize, alpha: f64) -> f64 {
    let x = n as f64 + alpha;
    ((alpha + 1.0) / ((x + 1.0) * (x + 2.0))).sqrt()
}
