//! Iterative radix-2 FFT on power-of-two lengths.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Direction {
    /// `X_j = Σ_n x_n e^{-2πi nj/N}`
    Forward,
    /// `x_j = Σ_n X_n e^{+2πi nj/N}` (no 1/N factor)
    Inverse,
}

pub(crate) fn check_power_of_two(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

pub(crate) fn transform(buf: &mut [Complex64], dir: Direction) -> Result<()> {
    let n = buf.len();
    check_power_of_two(n)?;
    if n == 1 {
        return Ok(());
    }

    // bit reversal
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            buf.swap(i, j);
        }
    }

    // Twiddles are evaluated directly rather than by repeated multiplication,
    // which keeps the round-trip error at a few ulps for long transforms.
    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| {
            let ang = sign * 2.0 * PI * k as f64 / n as f64;
            Complex64::new(libm::cos(ang), libm::sin(ang))
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn naive(x: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|j| {
                x.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (k, &v)| {
                    let ang = sign * 2.0 * PI * (j * k) as f64 / n as f64;
                    acc + v * Complex64::new(libm::cos(ang), libm::sin(ang))
                })
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let x: Vec<Complex64> =
            (0..16).map(|k| Complex64::new(libm::sin(k as f64 * 0.7), (k * k) as f64 * 0.01)).collect();
        let mut f = x.clone();
        transform(&mut f, Direction::Forward).unwrap();
        let g = naive(&x, -1.0);
        for (a, b) in f.iter().zip(&g) {
            assert!((a - b).norm() < 1e-12);
        }
        let mut i = x.clone();
        transform(&mut i, Direction::Inverse).unwrap();
        for (a, b) in i.iter().zip(naive(&x, 1.0)) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        let mut x = vec![Complex64::new(0.0, 0.0); 12];
        assert_eq!(transform(&mut x, Direction::Forward), Err(Error::NotPowerOfTwo(12)));
    }
}
