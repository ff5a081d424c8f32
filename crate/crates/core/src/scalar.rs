use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used throughout the crate: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Working absolute tolerance: `1e-12` for `f64`, a few ulps for narrower types.
    fn tolerance() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(32.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}
