//! Scalar angles between subspaces and between oriented blades.

use crate::blade::{Blade, Subspace};
use crate::error::{Error, Result};
use crate::principal::{PrincipalData, Sign};
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// `acos` with the argument clamped to `[-1, 1]`.
pub fn acos_clamped<T: Scalar>(c: T) -> T {
    c.max(-T::one()).min(T::one()).acos()
}

/// Cosine of the asymmetric angle of the first subspace with the second:
/// the product of cosines when `p <= q`, zero otherwise.
pub fn cos_asymmetric<T: Scalar>(pd: &PrincipalData<T>) -> T {
    if pd.p() > pd.q() {
        return T::zero();
    }
    pd.thetas().iter().fold(T::one(), |acc, t| acc * t.cos())
}

/// Cosine of the complementary angle, the product of sines.
pub fn cos_complementary<T: Scalar>(pd: &PrincipalData<T>) -> T {
    pd.thetas().iter().fold(T::one(), |acc, t| acc * t.sin())
}

/// Cosine of the max-symmetrized angle.
pub fn cos_max_symmetrized<T: Scalar>(pd: &PrincipalData<T>) -> T {
    cos_asymmetric(pd).min(cos_asymmetric(&pd.swapped()))
}

/// Cosine of the min-symmetrized angle.
pub fn cos_min_symmetrized<T: Scalar>(pd: &PrincipalData<T>) -> T {
    cos_asymmetric(pd).max(cos_asymmetric(&pd.swapped()))
}

/// Angles between two subspaces and, for blades, their oriented versions.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleReport<T> {
    /// Asymmetric angle of the first subspace with the second.
    pub asym_vw: T,
    /// Asymmetric angle of the second subspace with the first.
    pub asym_wv: T,
    pub comp: T,
    pub max_sym: T,
    pub min_sym: T,
    /// Projection factor of the first subspace on the second.
    pub proj_factor_vw: T,
    pub principal_angles: Vec<T>,
    pub oriented: Option<OrientedAngles<T>>,
}

/// Angles in `[0, π]` that account for the orientation of the blades.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedAngles<T> {
    pub asym: T,
    pub comp: T,
    pub max_sym: T,
    pub proj_factor: T,
    pub sign: Sign,
    /// False when the sign depends on the choice of principal bases.
    pub determinate: bool,
}

impl<T: Scalar> AngleReport<T> {
    pub fn from_principal(pd: &PrincipalData<T>, oriented: bool) -> Self {
        let c_vw = cos_asymmetric(pd);
        let c_wv = cos_asymmetric(&pd.swapped());
        let c_max = c_vw.min(c_wv);
        let c_comp = cos_complementary(pd);
        let oriented = oriented.then(|| {
            let o = pd.orientation();
            let s = o.sign.value::<T>();
            OrientedAngles {
                asym: acos_clamped(s * c_vw),
                comp: acos_clamped(s * c_comp),
                max_sym: acos_clamped(s * c_max),
                proj_factor: s * c_vw,
                sign: o.sign,
                determinate: o.determinate,
            }
        });
        AngleReport {
            asym_vw: acos_clamped(c_vw),
            asym_wv: acos_clamped(c_wv),
            comp: acos_clamped(c_comp),
            max_sym: acos_clamped(c_max),
            min_sym: acos_clamped(c_vw.max(c_wv)),
            proj_factor_vw: c_vw,
            principal_angles: pd.thetas().to_vec(),
            oriented,
        }
    }
}

fn unit_pair<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<PrincipalData<T>> {
    PrincipalData::compute(&v.unit_blade(), &w.unit_blade(), tol)
}

fn require_nontrivial<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<()> {
    if v.dim() == 0 || w.dim() == 0 {
        return Err(Error::ParameterOutOfRange("zero-dimensional subspace".into()));
    }
    Ok(())
}

/// Asymmetric angle `Θ_{V,W}`, `π/2` whenever `dim V > dim W`.
pub fn asymmetric_angle<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<T> {
    require_nontrivial(v, w)?;
    Ok(acos_clamped(cos_asymmetric(&unit_pair(v, w, tol)?)))
}

/// Complementary angle `Θ⊥_{V,W}`, symmetric in its arguments.
///
/// The two argument orders give the same result bit for bit: the angles are
/// always computed from the pair in a fixed order, since an SVD of the
/// transposed cross-Gram matrix rounds differently.
pub fn complementary_angle<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<T> {
    let (first, second) = if canonical_first(v, w) { (v, w) } else { (w, v) };
    Ok(acos_clamped(cos_complementary(&unit_pair(first, second, tol)?)))
}

/// Total order on subspaces by dimension, then frame coefficients.
fn canonical_first<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> bool {
    use std::cmp::Ordering;
    let coeffs = |s: &Subspace<T>| s.frame().iter().flatten().map(|x| x.to_f64_lossy()).collect::<Vec<f64>>();
    let by_coeffs = || {
        coeffs(v)
            .iter()
            .zip(coeffs(w).iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    };
    v.dim().cmp(&w.dim()).then_with(by_coeffs) != Ordering::Greater
}

/// `(max-symmetrized, min-symmetrized)` angles.
pub fn symmetrized_angles<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<(T, T)> {
    let pd = unit_pair(v, w, tol)?;
    Ok((acos_clamped(cos_max_symmetrized(&pd)), acos_clamped(cos_min_symmetrized(&pd))))
}

/// Projection factor `π_{V,W}`: the volume contraction from `V` onto `W`.
pub fn projection_factor<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<T> {
    Ok(cos_asymmetric(&unit_pair(v, w, tol)?))
}

/// Full report for two subspaces, without orientation.
pub fn subspace_angles<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<AngleReport<T>> {
    Ok(AngleReport::from_principal(&unit_pair(v, w, tol)?, false))
}

/// Full report for two blades including oriented angles.
pub fn oriented_angles<T: Scalar>(a: &Blade<T>, b: &Blade<T>, tol: &Tolerance<T>) -> Result<AngleReport<T>> {
    Ok(AngleReport::from_principal(&PrincipalData::compute(a, b, tol)?, true))
}
