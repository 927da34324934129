//! Scalar abstraction for the numeric core.
//!
//! Everything in this crate is generic over a real floating-point scalar.
//! The [`Real`] trait bundles the `num-traits` bounds the algorithms need
//! together with a small set of named tolerance classes. The `f64` values
//! are the reference ones; the `f32` values are scaled so the same checks
//! remain meaningful at single precision.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::{Product, Sum};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rand::Rng;

/// Real floating-point scalar usable throughout the crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Product
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Shorthand for `from_f64(x).unwrap()`; constants in this crate are
    /// exactly representable at both precisions.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable")
    }

    /// Tolerance for identities that hold to a few rounding errors
    /// (complex-pair self-checks, exact algebraic rewrites).
    fn tol_pair() -> Self;

    /// Tolerance for algebraic identity residuals built from a handful of
    /// matrix products.
    fn tol_identity() -> Self;

    /// Tolerance for factorization residuals (Cholesky, refactoring).
    fn tol_factor() -> Self;

    /// Relative tolerance for structural classification checks
    /// (Hermiticity, pseudo-Hermiticity, block structure).
    fn tol_structural() -> Self;

    /// Tolerance for spectral quantities (eigenresiduals, propagator
    /// eta-unitarity).
    fn tol_spectral() -> Self;

    /// Hard failure threshold; residuals past this indicate a genuine
    /// breakdown rather than accumulated rounding.
    fn tol_hard() -> Self;

    /// Condition-number limit past which an eigenvector matrix is treated
    /// as numerically defective.
    fn cond_limit() -> Self;
}

impl Real for f64 {
    fn tol_pair() -> Self {
        1e-14
    }
    fn tol_identity() -> Self {
        1e-12
    }
    fn tol_factor() -> Self {
        1e-11
    }
    fn tol_structural() -> Self {
        1e-10
    }
    fn tol_spectral() -> Self {
        1e-9
    }
    fn tol_hard() -> Self {
        1e-6
    }
    fn cond_limit() -> Self {
        1e8
    }
}

impl Real for f32 {
    fn tol_pair() -> Self {
        1e-5
    }
    fn tol_identity() -> Self {
        1e-4
    }
    fn tol_factor() -> Self {
        1e-4
    }
    fn tol_structural() -> Self {
        1e-3
    }
    fn tol_spectral() -> Self {
        1e-3
    }
    fn tol_hard() -> Self {
        1e-1
    }
    fn cond_limit() -> Self {
        1e4
    }
}

/// Standard normal deviate via the Box-Muller transform.
///
/// Randomness is always drawn as `f64` and converted, so seeded sequences
/// are identical for every scalar instantiation.
pub fn standard_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
    T::of(z)
}

/// Standard normal complex deviate (real and imaginary parts independent).
pub fn standard_normal_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::new(standard_normal(rng), standard_normal(rng))
}
