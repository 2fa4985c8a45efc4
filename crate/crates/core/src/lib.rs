//! Numerics for Hankel operators with anti-holomorphic symbols on the Hardy
//! space of the unit disc.
//!
//! The crate computes the quantities that decide membership of `H_{f̄}` in
//! the Dixmier ideal: integral and dyadic Besov seminorms of the symbol,
//! nonincreasing rearrangements of the associated sample clouds, singular
//! spectra of truncated Hankel matrices (Hardy and weighted Bergman), and the
//! log-average / scaled-Schatten limit estimators that tie them together.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the companion `hardy-dixmier-cli` crate.
//!
//! Module map:
//!
//! - [`symbols`]: Taylor-coefficient symbols, lacunary specs and the two
//!   lacunary example families.
//! - [`dyadic`]: triangular Littlewood–Paley windows, block decomposition,
//!   dyadic Besov norms, the block sample cloud.
//! - [`discquad`]: weighted area integrals over the disc.
//! - [`rearrange`]: measured samples, step functions, Lorentz and
//!   Marcinkiewicz-type norms, the Holmstedt K-functional.
//! - [`hankel`]: Hankel truncations, singular spectra and spectral norms.
//! - [`dixmier`]: Hardy means, limit curves and the sandwich / identity checks.

#![no_std]
#![warn(missing_debug_implementations)]
// `!(x > 0.0)` is the idiom used throughout to reject NaN along with the domain
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod curve;
pub mod discquad;
pub mod dixmier;
pub mod dyadic;
mod error;
mod fft;
pub mod hankel;
mod quadrature;
pub mod rearrange;
pub mod scaled;
pub mod symbols;

pub use curve::{Approach, Extrapolation, LimitCurve, Monotonicity, Window};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use quadrature::{gauss_jacobi, QuadratureRule};
pub use scaled::ScaledReal;

/// An exponent that may be infinite, used for `q` in `l^q`, Lorentz and
/// Schatten–Lorentz quasinorms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }
}

impl From<f64> for Exponent {
    fn from(q: f64) -> Self {
        if q.is_infinite() {
            Exponent::Infinite
        } else {
            Exponent::Finite(q)
        }
    }
}
