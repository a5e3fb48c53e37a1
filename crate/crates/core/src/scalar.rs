//! Floating-point scalar abstraction.
//!
//! All core math is generic over [`Scalar`], which is any IEEE float with
//! the usual transcendental functions. `f64` is the working precision for
//! every verification target; `f32` is supported for smoke-level checks.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use serde::{de::DeserializeOwned, Serialize};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Default
    + Serialize
    + DeserializeOwned
    + std::fmt::Debug
    + std::fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Shorthand for a lossy conversion from `f64` literals.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 conversion")
    }

    /// Two, spelled once.
    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the crate scalar.
pub type C<S> = Complex<S>;

/// `e^{iθ}` as a complex scalar.
pub fn cis<S: Scalar>(theta: S) -> C<S> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}
