//! Scalar abstraction for the numerical kernels.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the toolkit is generic over.
///
/// Implemented for `f32` and `f64`. The default [`crate::tol::Tolerances`]
/// are calibrated for `f64`; with `f32` supply looser tolerances explicitly,
/// since the defaults sit below `f32` rounding noise.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + std::iter::Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into the scalar type.
    ///
    /// Used for tolerance defaults and fixed mathematical constants, where a
    /// rounded `f32` value is acceptable.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant converts to scalar")
    }

    /// Converts into `f64` for diagnostics and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
