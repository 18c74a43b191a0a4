//! Scalar abstraction for the numeric core.
//!
//! Everything numeric in this crate is generic over [`Real`]. `f64` is the
//! precision the published coefficients and the test tolerances target;
//! `f32` works but loosens what is achievable.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant, rounding to the nearest representable
    /// value.
    fn cast(value: f64) -> Self {
        Self::from_f64(value).expect("f64 constant converts to scalar")
    }

    /// Widens to `f64`, mainly for error messages.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssignOps
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
