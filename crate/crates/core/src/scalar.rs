//! Floating-point scalar abstraction.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar field used by every type in the crate.
///
/// Implemented for `f32` and `f64`. The associated constants give the
/// default tolerances for that precision.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Default tolerance for structural decisions (grade, rank, simplicity).
    const DEFAULT_STRUCTURAL: f64;
    /// Default relative tolerance for identity checks.
    const DEFAULT_IDENTITY: f64;
    /// Default threshold below which an angle counts as 0 or as a right angle.
    const DEFAULT_ANGLE: f64;

    /// Converts an `f64` literal. Never fails for the provided impls.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const DEFAULT_STRUCTURAL: f64 = 1e-10;
    const DEFAULT_IDENTITY: f64 = 1e-9;
    const DEFAULT_ANGLE: f64 = 1e-8;
}

impl Scalar for f32 {
    const DEFAULT_STRUCTURAL: f64 = 1e-4;
    const DEFAULT_IDENTITY: f64 = 5e-4;
    const DEFAULT_ANGLE: f64 = 2e-3;
}
