//! Holomorphic symbols as finite Taylor series, lacunary coefficient specs,
//! and the two lacunary example families (oscillating `σ` and gap blocks).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::domain;
use crate::fft::{self, Direction};
use crate::{Error, Result, ScaledReal};

/// Largest lacunary index accepted by [`lacunary_to_series`]; `2^28` complex
/// coefficients is already 4 GiB.
pub const MAX_DENSE_LACUNARY_INDEX: usize = 28;

/// `f(z) = Σ_{n=0}^{N} f_n z^n`, truncated at the declared degree `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSeries {
    coeffs: Vec<Complex64>,
}

impl SymbolSeries {
    /// Builds a series from `f_0 … f_N`. An empty vector is the zero series of
    /// degree 0.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        SymbolSeries { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        SymbolSeries { coeffs: vec![Complex64::new(0.0, 0.0); degree + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `f_n`, zero beyond the truncation degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Index of the last nonzero coefficient, `None` for the zero series.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.effective_degree().is_none()
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `f(e^{iα} z)`: coefficient `n` picks up `e^{inα}`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(n, &c)| c * Complex64::from_polar(1.0, alpha * n as f64)).collect();
        SymbolSeries { coeffs }
    }

    /// Coefficientwise `α f + β g`, at the larger of the two degrees.
    pub fn linear_combination(alpha: Complex64, f: &Self, beta: Complex64, g: &Self) -> Self {
        let n = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..n).map(|k| alpha * f.coeff(k) + beta * g.coeff(k)).collect();
        SymbolSeries { coeffs }
    }

    /// Keeps `f_0 … f_degree`, padding with zeros if the series is shorter.
    pub fn truncated(&self, degree: usize) -> Self {
        let coeffs = (0..=degree).map(|k| self.coeff(k)).collect();
        SymbolSeries { coeffs }
    }
}

/// `scale · z^k`.
pub fn monomial_symbol(k: usize, scale: Complex64) -> SymbolSeries {
    let mut s = SymbolSeries::zero(k);
    s.coeffs[k] = scale;
    s
}

/// `f^{(order)}`: coefficient `n` is `f_{n+order} (n+order)!/n!`.
pub fn derivative_series(s: &SymbolSeries, order: usize) -> Result<SymbolSeries> {
    if order == 0 {
        return Err(domain("derivative order must be positive", 0.0));
    }
    let deg = s.degree();
    if order > deg {
        return Ok(SymbolSeries::zero(0));
    }
    let coeffs = (0..=deg - order)
        .map(|n| {
            let falling: f64 = (n + 1..=n + order).map(|m| m as f64).product();
            s.coeffs[n + order] * falling
        })
        .collect();
    Ok(SymbolSeries { coeffs })
}

/// `f(e^{2πij/G})` for `j = 0 … G-1` by a zero-padded inverse DFT.
pub fn eval_on_circle_grid(s: &SymbolSeries, grid_size: usize) -> Result<Vec<Complex64>> {
    let required = 2 * (s.degree() + 1);
    if grid_size < required {
        return Err(Error::GridTooSmall { required, got: grid_size });
    }
    fft::check_power_of_two(grid_size)?;
    let mut buf = vec![Complex64::new(0.0, 0.0); grid_size];
    buf[..s.coeffs.len()].copy_from_slice(&s.coeffs);
    fft::transform(&mut buf, Direction::Inverse)?;
    Ok(buf)
}

/// Same as [`eval_on_circle_grid`] on the circle of radius `r`.
pub(crate) fn eval_on_circle(s: &SymbolSeries, r: f64, grid_size: usize) -> Result<Vec<Complex64>> {
    fft::check_power_of_two(grid_size)?;
    if grid_size <= s.degree() {
        return Err(Error::GridTooSmall { required: s.degree() + 1, got: grid_size });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); grid_size];
    let mut rn = 1.0;
    for (slot, &c) in buf.iter_mut().zip(&s.coeffs) {
        *slot = c * rn;
        rn *= r;
    }
    fft::transform(&mut buf, Direction::Inverse)?;
    Ok(buf)
}

/// Inverse of [`eval_on_circle_grid`]: Taylor coefficients `0 … degree` from
/// grid samples.
pub fn circle_grid_coefficients(samples: &[Complex64], degree: usize) -> Result<SymbolSeries> {
    let g = samples.len();
    if g <= degree {
        return Err(Error::GridTooSmall { required: degree + 1, got: g });
    }
    let mut buf = samples.to_vec();
    fft::transform(&mut buf, Direction::Forward)?;
    let scale = 1.0 / g as f64;
    Ok(SymbolSeries { coeffs: buf[..=degree].iter().map(|c| c * scale).collect() })
}

/// Positive nonincreasing coefficients `c_m` of `f = Σ c_m z^{2^m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LacunarySpec {
    c: Vec<ScaledReal>,
}

impl LacunarySpec {
    pub fn new(c: Vec<ScaledReal>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::EmptyGrid("lacunary spec needs at least one coefficient"));
        }
        for (m, w) in c.iter().enumerate() {
            if !w.is_positive() || !w.mantissa().is_finite() {
                return Err(Error::NotNonincreasing(m));
            }
            if m > 0 && *w > c[m - 1] {
                return Err(Error::NotNonincreasing(m));
            }
        }
        Ok(LacunarySpec { c })
    }

    pub fn from_f64(c: &[f64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| ScaledReal::from_f64(x)).collect())
    }

    pub fn coeffs(&self) -> &[ScaledReal] {
        &self.c
    }

    /// Largest lacunary index `M`.
    pub fn max_index(&self) -> usize {
        self.c.len() - 1
    }

    /// `2^m c_m`, exact in the scaled representation.
    pub fn block_mass(&self, m: usize) -> ScaledReal {
        self.c[m].mul_pow2(m as i64)
    }

    /// Keeps `c_0 … c_m`.
    pub fn truncated(&self, m: usize) -> Self {
        LacunarySpec { c: self.c[..=m.min(self.max_index())].to_vec() }
    }

    /// Keeps the terms with frequency `2^m <= max_frequency`.
    pub fn up_to_frequency(&self, max_frequency: usize) -> Option<Self> {
        if max_frequency == 0 {
            return None;
        }
        let m = (usize::BITS - 1 - max_frequency.leading_zeros()) as usize;
        Some(self.truncated(m))
    }
}

/// Dense series with `f_{2^m} = c_m`.
pub fn lacunary_to_series(spec: &LacunarySpec) -> Result<SymbolSeries> {
    let m_max = spec.max_index();
    if m_max > MAX_DENSE_LACUNARY_INDEX || m_max >= usize::BITS as usize - 1 {
        return Err(Error::DegreeOverflow(m_max));
    }
    let mut s = SymbolSeries::zero(1usize << m_max);
    for (m, c) in spec.c.iter().enumerate() {
        s.coeffs[1usize << m] = Complex64::new(c.to_f64(), 0.0);
    }
    Ok(s)
}

/// Parameters of `σ(x) = (A + B cos(ln ln x / ln a)) x + C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaShape {
    pub a_const: f64,
    pub b_const: f64,
    pub base: f64,
}

impl SigmaShape {
    fn oscillating_slope(&self, x: f64) -> f64 {
        self.a_const + self.b_const * (x.ln().ln() / self.base.ln()).cos()
    }

    /// `σ(x) - C`.
    pub fn linear_part(&self, x: f64) -> f64 {
        self.oscillating_slope(x) * x
    }
}

/// Output of [`sigma_example`].
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaExample {
    pub spec: LacunarySpec,
    pub shape: SigmaShape,
    /// First index from which `c_j` follows the difference formula.
    pub j0: usize,
    /// Additive constant making `Σ_{j<=k} 2^j c_j = σ(k)` for `k >= j0`.
    pub c_const: f64,
}

impl SigmaExample {
    /// `σ(x)` including the additive constant.
    pub fn sigma(&self, x: f64) -> f64 {
        self.shape.linear_part(x) + self.c_const
    }
}

/// Lacunary coefficients `c_j = (σ(j) - σ(j-1)) / 2^j` for `j >= j0`, held at
/// `c_{j0}` below `j0`.
pub fn sigma_example(a_const: f64, b_const: f64, base: f64, j_max: usize) -> Result<SigmaExample> {
    if !(b_const > 0.0) {
        return Err(domain("B must be positive", b_const));
    }
    if !(a_const > b_const) {
        return Err(domain("A must exceed B", a_const));
    }
    if !(base > 1.0) {
        return Err(domain("base a must exceed 1", base));
    }
    if j_max < 3 {
        return Err(domain("j_max must be at least 3", j_max as f64));
    }
    let shape = SigmaShape { a_const, b_const, base };

    // c_j for j = 3..=j_max, indexed by j
    let mut c = vec![ScaledReal::ZERO; j_max + 1];
    for (j, slot) in c.iter_mut().enumerate().skip(3) {
        let jf = j as f64;
        let delta = shape.linear_part(jf) - shape.linear_part(jf - 1.0);
        *slot = ScaledReal::new(delta, -(j as i64));
    }

    // smallest j0 >= 3 with c_j > 0 and c_{j+1} <= c_j for all j >= j0
    let mut j0 = j_max;
    if !c[j_max].is_positive() {
        return Err(Error::NoMonotoneStart { limit: j_max / 2 });
    }
    while j0 > 3 && c[j0 - 1].is_positive() && c[j0] <= c[j0 - 1] {
        j0 -= 1;
    }
    if j0 > j_max / 2 {
        return Err(Error::NoMonotoneStart { limit: j_max / 2 });
    }

    let head = c[j0];
    for slot in c.iter_mut().take(j0) {
        *slot = head;
    }
    // Σ_{j<=j0} 2^j c_j = (2^{j0+1} - 1) c_{j0} must equal σ(j0).
    let partial = head.to_f64() * ((1u128 << (j0 + 1)) as f64 - 1.0);
    let c_const = partial - shape.linear_part(j0 as f64);

    Ok(SigmaExample { spec: LacunarySpec::new(c)?, shape, j0, c_const })
}

/// Gap blocks `N_k = k²`, `a_k = k 2^{-N_{k+1}}`, `c_j = a_k` on
/// `(N_k, N_{k+1}]`, with `c_0 = c_1 = a_0 = 1`.
pub fn gap_example(k_max: usize) -> Result<LacunarySpec> {
    if k_max < 1 {
        return Err(domain("k_max must be at least 1", k_max as f64));
    }
    let last = gap_block_end(k_max + 1);
    let mut c = Vec::with_capacity(last + 1);
    c.push(ScaledReal::from_f64(1.0));
    c.push(ScaledReal::from_f64(1.0));
    for k in 1..=k_max {
        let a_k = ScaledReal::new(k as f64, -(gap_block_end(k + 1) as i64));
        for _ in gap_block_end(k) + 1..=gap_block_end(k + 1) {
            c.push(a_k);
        }
    }
    LacunarySpec::new(c)
}

/// `(N_k, N_{k+1}]` block boundaries used by [`gap_example`].
pub fn gap_block_end(k: usize) -> usize {
    if k == 0 {
        1
    } else {
        k * k
    }
}
