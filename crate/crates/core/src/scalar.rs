//! Real-valued scalar abstraction.
//!
//! Timing, fitness and cost-model arithmetic is written against [`Scalar`]
//! so the same search can run in `f32` or `f64`. Loop counts, profiles and
//! everything structural stay integral.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumCast, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// floating point: f32 or f64
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumCast
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossy conversion from `f64`, used for literals and RNG draws.
    fn of(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("f64 is representable in every Scalar")
    }

    /// Lossy conversion from an iteration or execution count.
    fn of_count(n: u64) -> Self {
        <Self as NumCast>::from(n).expect("counts are representable in every Scalar")
    }

    /// Strictly positive; false for NaN.
    fn gt_zero(self) -> bool {
        self > Self::zero()
    }

    /// Strictly negative; false for NaN.
    fn lt_zero(self) -> bool {
        self < Self::zero()
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Microseconds per second.
pub(crate) fn micros_per_second<T: Scalar>() -> T {
    T::of(1_000_000.0)
}
