//! Numerical tolerances.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Environment variable that overrides the default identity tolerance.
pub const EPS_ENV_VAR: &str = "BLADE_ANGLES_EPS";

/// Upper bound (exclusive) on every tolerance.
pub const MAX_TOLERANCE: f64 = 1e-3;

/// Upper bound (exclusive) on the angle threshold.
pub const MAX_ANGLE_THRESHOLD: f64 = 1e-2;

/// Tolerances used for structural decisions and identity checks.
///
/// `structural` decides grades, ranks and simplicity, `identity` is the
/// relative residual accepted by identity checks, `angle` decides when an
/// angle is treated as 0 or as a right angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub structural: T,
    pub identity: T,
    pub angle: T,
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance {
            structural: T::lit(T::DEFAULT_STRUCTURAL),
            identity: T::lit(T::DEFAULT_IDENTITY),
            angle: T::lit(T::DEFAULT_ANGLE),
        }
    }
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(structural: T, identity: T) -> Result<Self> {
        let tol = Tolerance { structural, identity, ..Self::default() };
        tol.validate()?;
        Ok(tol)
    }

    /// Defaults, with `identity` taken from `BLADE_ANGLES_EPS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(EPS_ENV_VAR) {
            Ok(raw) => {
                let eps: f64 =
                    raw.trim().parse().map_err(|_| Error::InvalidTolerance(format!("{EPS_ENV_VAR}={raw}")))?;
                Self::default().with_identity(T::lit(eps))
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn with_identity(self, identity: T) -> Result<Self> {
        let tol = Tolerance { identity, ..self };
        tol.validate()?;
        Ok(tol)
    }

    pub fn with_structural(self, structural: T) -> Result<Self> {
        let tol = Tolerance { structural, ..self };
        tol.validate()?;
        Ok(tol)
    }

    pub fn with_angle(self, angle: T) -> Result<Self> {
        let tol = Tolerance { angle, ..self };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v, max) in [
            ("structural", self.structural, MAX_TOLERANCE),
            ("identity", self.identity, MAX_TOLERANCE),
            ("angle", self.angle, MAX_ANGLE_THRESHOLD),
        ] {
            if !(v > T::zero() && v < T::lit(max)) {
                return Err(Error::InvalidTolerance(format!("{name} tolerance {v} not in (0, {max})")));
            }
        }
        Ok(())
    }

    /// True when `theta` counts as a zero angle.
    #[inline]
    pub fn is_zero_angle(&self, theta: T) -> bool {
        theta < self.angle
    }

    /// True when `theta` counts as a right angle.
    #[inline]
    pub fn is_right_angle(&self, theta: T) -> bool {
        (theta - T::FRAC_PI_2()).abs() < self.angle
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        Tolerance::<f64>::default().validate().unwrap();
        Tolerance::<f32>::default().validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Tolerance::<f64>::new(0.0, 1e-9).is_err());
        assert!(Tolerance::<f64>::new(1e-10, 1e-3).is_err());
        assert!(Tolerance::<f64>::new(-1.0, 1e-9).is_err());
        assert!(Tolerance::<f64>::new(1e-10, f64::NAN).is_err());
    }

    #[test]
    fn angle_classification() {
        let tol = Tolerance::<f64>::default();
        assert!(tol.is_zero_angle(5e-9));
        assert!(!tol.is_zero_angle(2e-8));
        assert!(tol.is_right_angle(std::f64::consts::FRAC_PI_2 - 5e-9));
        assert!(!tol.is_right_angle(1.5));
    }
}
