//! Principal angles between subspaces of Euclidean space, expressed through
//! blades of its Clifford algebra.
//!
//! The crate computes principal angles and bases from blades, builds the
//! angle bivector whose exponential relates two blades, and checks the
//! identities tying the geometric product and its subproducts to those
//! angles. Everything is generic over the scalar type ([`Scalar`], for
//! `f32` and `f64`); the `*64` and `*32` aliases fix it.
//!
//! ```
//! use blade_angles::prelude::*;
//!
//! let tol = Tolerance64::default();
//! let alg = Algebra::new(3).unwrap();
//! let a = Blade64::from_vectors(alg, &[vec![1.0, 0.0, 0.0]], &tol).unwrap();
//! let b = Blade64::from_vectors(alg, &[vec![1.0, 1.0, 0.0]], &tol).unwrap();
//! let pd = PrincipalData64::compute(&a, &b, &tol).unwrap();
//! assert!((pd.thetas()[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
//! ```

// Negated comparisons are how NaN gets rejected along with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod angles;
pub mod bivector;
pub mod blade;
pub mod error;
pub mod hitzer;
pub mod identities;
pub mod linalg;
pub mod multivector;
pub mod principal;
pub mod random;
pub mod scalar;
pub mod series;
pub mod tolerance;
pub mod verify;

pub use algebra::Algebra;
pub use angles::{AngleReport, OrientedAngles};
pub use bivector::{AngleBivector, PluckerCoordinate, PluckerTerm, YVector};
pub use blade::{Blade, Subspace};
pub use error::{Error, Result};
pub use hitzer::{hitzer_recover, HitzerRecovery};
pub use identities::{BladePair, IdentityResult};
pub use multivector::Multivector;
pub use principal::{PrincipalData, Sign};
pub use scalar::Scalar;
pub use tolerance::Tolerance;
pub use verify::{run_suite, SuiteConfig, SuiteReport};

pub type Multivector64 = Multivector<f64>;
pub type Blade64 = Blade<f64>;
pub type Subspace64 = Subspace<f64>;
pub type PrincipalData64 = PrincipalData<f64>;
pub type AngleBivector64 = AngleBivector<f64>;
pub type Tolerance64 = Tolerance<f64>;

pub type Multivector32 = Multivector<f32>;
pub type Blade32 = Blade<f32>;
pub type Subspace32 = Subspace<f32>;
pub type PrincipalData32 = PrincipalData<f32>;
pub type AngleBivector32 = AngleBivector<f32>;
pub type Tolerance32 = Tolerance<f32>;

/// Common imports.
pub mod prelude {
    pub use crate::angles::{oriented_angles, subspace_angles};
    pub use crate::bivector::{angle_bivector, geodesic_sample, oriented_angle_bivector};
    pub use crate::principal::{principal_angles, principal_data};
    pub use crate::{
        Algebra, AngleBivector, AngleBivector64, Blade, Blade64, BladePair, Error, Multivector, Multivector64,
        PrincipalData, PrincipalData64, Result, Scalar, Subspace, Subspace64, Tolerance, Tolerance64,
    };
}
