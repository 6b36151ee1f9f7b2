//! Floating-point scalar abstraction shared by the geometric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used for distances, weights and coordinates.
///
/// The associated tolerances are tuned per precision: `threshold_tol` is the
/// slack applied to every `d >= r` comparison, `loose_tol` is used for
/// symmetry repair, antipodality and plane-membership checks.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Slack for threshold comparisons `d >= r - threshold_tol`.
    fn threshold_tol() -> Self;
    /// Slack for symmetry, antipodality and subspace checks.
    fn loose_tol() -> Self;
    /// Masses at or below this value are treated as zero.
    fn weight_tol() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a `usize`.
    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `acos` with the argument clamped to `[-1, 1]`.
    #[inline]
    fn acos_clamped(self) -> Self {
        self.max(-Self::one()).min(Self::one()).acos()
    }
}

impl Scalar for f64 {
    fn threshold_tol() -> Self {
        1e-12
    }
    fn loose_tol() -> Self {
        1e-9
    }
    fn weight_tol() -> Self {
        1e-14
    }
}

impl Scalar for f32 {
    fn threshold_tol() -> Self {
        1e-5
    }
    fn loose_tol() -> Self {
        1e-4
    }
    fn weight_tol() -> Self {
        1e-6
    }
}

/// `true` when `d >= r` up to the threshold slack.
#[inline]
pub fn at_least<T: Scalar>(d: T, r: T) -> bool {
    d >= r - T::threshold_tol()
}

/// `true` when `d < r` up to the threshold slack; the complement of [`at_least`].
#[inline]
pub fn below<T: Scalar>(d: T, r: T) -> bool {
    !at_least(d, r)
}
