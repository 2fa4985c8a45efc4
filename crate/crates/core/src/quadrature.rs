//! Gauss–Jacobi rules by the Golub–Welsch method.
//!
//! The Jacobi matrix is diagonalized with an implicit QL iteration that
//! carries only the first row of the eigenvector matrix; the weights are
//! `μ0 · z_i²`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::domain;
use crate::{Error, Result};

/// Nodes and weights of a quadrature rule, nodes ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `n`-point Gauss rule for `∫_{-1}^{1} (1-x)^a (1+x)^b g(x) dx`, `a, b > -1`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::EmptyGrid("quadrature order must be positive"));
    }
    if !(a > -1.0) {
        return Err(domain("Jacobi exponent a must exceed -1", a));
    }
    if !(b > -1.0) {
        return Err(domain("Jacobi exponent b must exceed -1", b));
    }

    let ab = a + b;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    diag[0] = (b - a) / (ab + 2.0);
    for (k, d) in diag.iter_mut().enumerate().skip(1) {
        let s = 2.0 * k as f64 + ab;
        *d = (b * b - a * a) / (s * (s + 2.0));
    }
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        // (s - 1) cancels against (k + a + b) when k = 1 and a + b -> -1; keep
        // the product form for k > 1 only.
        let num = if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off[k - 1] = num.sqrt();
    }

    let log_mu0 =
        (ab + 1.0) * core::f64::consts::LN_2 + libm::lgamma(a + 1.0) + libm::lgamma(b + 1.0) - libm::lgamma(ab + 2.0);
    let mu0 = log_mu0.exp();

    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut z)?;

    let mut pairs: Vec<(f64, f64)> = diag.into_iter().zip(z).map(|(x, zi)| (x, mu0 * zi * zi)).collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights })
}

/// Rule for `∫_0^1 u^beta g(u) du`.
pub(crate) fn gauss_jacobi_unit(n: usize, beta: f64) -> Result<QuadratureRule> {
    let rule = gauss_jacobi(n, 0.0, beta)?;
    let scale = (-(beta + 1.0) * core::f64::consts::LN_2).exp();
    Ok(QuadratureRule {
        nodes: rule.nodes.iter().map(|x| 0.5 * (1.0 + x)).collect(),
        weights: rule.weights.iter().map(|w| w * scale).collect(),
    })
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
///
/// `diag` is overwritten with the eigenvalues, `off[i]` couples `i` and `i+1`
/// (the last entry is scratch), and `z` is transformed along with the matrix
/// so that starting from `e_0` it ends as the first eigenvector components.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 1 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                let max_abs = diag.iter().chain(off.iter()).fold(0.0f64, |acc, v| acc.max(v.abs()));
                return Err(Error::Decomposition { n, max_abs });
            }

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}
