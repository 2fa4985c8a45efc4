//! Reals carried as `mantissa * 2^exponent`.
//!
//! The gap example needs coefficients like `k * 2^-1681`, far below the
//! smallest normal double. Products with powers of two stay exact in this
//! representation and are only collapsed to `f64` at the end.

use core::cmp::Ordering;
#[allow(unused_imports)]
use num_traits::Float;

/// `mantissa * 2^exponent`, normalized so that `1 <= |mantissa| < 2` (or the
/// mantissa is zero, in which case the exponent is zero as well).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledReal {
    mantissa: f64,
    exponent: i64,
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal { mantissa: 0.0, exponent: 0 };

    pub fn new(mantissa: f64, exponent: i64) -> Self {
        if mantissa == 0.0 || !mantissa.is_finite() {
            return ScaledReal { mantissa, exponent: if mantissa == 0.0 { 0 } else { exponent } };
        }
        // frexp gives m in [0.5, 1); shift to [1, 2).
        let (m, e) = libm::frexp(mantissa);
        ScaledReal { mantissa: m * 2.0, exponent: exponent + i64::from(e) - 1 }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    pub fn mantissa(self) -> f64 {
        self.mantissa
    }

    pub fn exponent(self) -> i64 {
        self.exponent
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_positive(self) -> bool {
        self.mantissa > 0.0
    }

    /// Multiply by `2^k`; exact.
    pub fn mul_pow2(self, k: i64) -> Self {
        if self.is_zero() {
            return self;
        }
        ScaledReal { mantissa: self.mantissa, exponent: self.exponent + k }
    }

    /// Nearest double; underflows to zero and overflows to infinity.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exponent.clamp(-2200, 2200) as i32;
        libm::ldexp(self.mantissa, e)
    }

    /// Base-2 logarithm of a positive value.
    pub fn log2(self) -> f64 {
        self.mantissa.abs().log2() + self.exponent as f64
    }

    /// Natural logarithm of a positive value.
    pub fn ln(self) -> f64 {
        self.log2() * core::f64::consts::LN_2
    }
}

impl PartialOrd for ScaledReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b) = (*self, *other);
        if !a.mantissa.is_finite() || !b.mantissa.is_finite() {
            return a.to_f64().partial_cmp(&b.to_f64());
        }
        match (a.mantissa.signum() as i32, b.mantissa.signum() as i32) {
            _ if a.is_zero() || b.is_zero() => a.mantissa.partial_cmp(&b.mantissa),
            (sa, sb) if sa != sb => sa.partial_cmp(&sb),
            (sa, _) => {
                let mag = a
                    .exponent
                    .cmp(&b.exponent)
                    .then_with(|| a.mantissa.abs().partial_cmp(&b.mantissa.abs()).unwrap_or(Ordering::Equal));
                Some(if sa > 0 { mag } else { mag.reverse() })
            }
        }
    }
}

impl From<f64> for ScaledReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_roundtrips() {
        let x = ScaledReal::new(12.0, -3);
        assert_eq!(x.mantissa(), 1.5);
        assert_eq!(x.exponent(), 0);
        assert_eq!(x.to_f64(), 1.5);
        assert_eq!(ScaledReal::from_f64(0.0), ScaledReal::ZERO);
    }

    #[test]
    fn deep_underflow_is_representable() {
        let a = ScaledReal::new(40.0, -1681);
        assert_eq!(a.to_f64(), 0.0);
        assert_eq!(a.mul_pow2(1681).to_f64(), 40.0);
        assert!((a.log2() - (40f64.log2() - 1681.0)).abs() < 1e-12);
    }

    #[test]
    fn ordering_across_exponents() {
        let small = ScaledReal::new(1.9, -900);
        let big = ScaledReal::new(1.0, -899);
        assert!(small < big);
        assert!(ScaledReal::new(-1.0, 5) < ScaledReal::new(-1.0, 4));
        assert!(ScaledReal::ZERO < small);
        assert_eq!(ScaledReal::new(3.0, 2).partial_cmp(&ScaledReal::new(12.0, 0)), Some(Ordering::Equal));
    }
}
