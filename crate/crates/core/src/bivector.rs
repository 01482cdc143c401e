//! Angle bivectors: exponentials, rotor transport, geodesics and Plücker
//! decompositions.

use std::fmt;

use crate::blade::{project_blade, Blade, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{complete_basis, dot, norm, reject_from, scaled};
use crate::multivector::Multivector;
use crate::principal::{wedge2, PrincipalData, Sign};
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// One summand `θ I` of an angle bivector.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneTerm<T> {
    /// Zero-based principal index.
    pub index: usize,
    pub theta: T,
    /// Unit simple bivector of the principal plane.
    pub plane: Multivector<T>,
}

/// `Φ = Σ θ_i I_i` over the principal planes with nonzero angle.
///
/// The term list is authoritative; [`AngleBivector::as_multivector`] sums it.
/// For subspaces of different dimensions only the first `min(p, q)` pairs
/// enter, so the bivector relates the smaller subspace to the projective
/// part of the larger one.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleBivector<T> {
    principal: PrincipalData<T>,
    terms: Vec<PlaneTerm<T>>,
    oriented: bool,
}

impl<T: Scalar> AngleBivector<T> {
    /// Builds `Φ_{V,W}` (or `Φ_{A,B}` when `oriented`) from principal data.
    ///
    /// In the oriented case with `ε = -1` the last term becomes
    /// `(π - θ_m)(-I_m)`. When that angle is zero a plane through `e_m` and
    /// a direction orthogonal to both subspaces is chosen; if none exists the
    /// result is [`Error::NoRotationPlane`].
    pub fn from_principal(pd: PrincipalData<T>, oriented: bool) -> Result<Self> {
        let mut terms: Vec<PlaneTerm<T>> = (0..pd.m())
            .filter_map(|i| pd.plane(i).map(|plane| PlaneTerm { index: i, theta: pd.thetas()[i], plane }))
            .collect();
        if oriented && pd.eps_ab().is_negative() {
            let m = pd.m();
            if m == 0 {
                return Err(Error::NoRotationPlane);
            }
            let k = m - 1;
            match terms.last_mut() {
                Some(t) if t.index == k => {
                    t.theta = T::PI() - t.theta;
                    t.plane = -&t.plane;
                }
                _ => {
                    let n = pd.algebra().dim();
                    let span = joint_span(pd.e_basis(), pd.f_basis());
                    let full = complete_basis(&span, n, span.len() + 1);
                    if full.len() <= span.len() {
                        return Err(Error::NoRotationPlane);
                    }
                    let u = full.last().expect("completion vector");
                    let plane = wedge2(pd.algebra(), &pd.e_basis()[k], u);
                    terms.push(PlaneTerm { index: k, theta: T::PI(), plane });
                }
            }
        }
        Ok(AngleBivector { principal: pd, terms, oriented })
    }

    #[inline]
    pub fn terms(&self) -> &[PlaneTerm<T>] {
        &self.terms
    }

    #[inline]
    pub fn principal(&self) -> &PrincipalData<T> {
        &self.principal
    }

    #[inline]
    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// The relative orientation folded into the bivector (`+1` when not
    /// oriented).
    pub fn sign(&self) -> Sign {
        if self.oriented {
            self.principal.eps_ab()
        } else {
            Sign::Positive
        }
    }

    /// `Σ θ_i I_i` as a multivector.
    pub fn as_multivector(&self) -> Multivector<T> {
        let mut acc = Multivector::zero(self.principal.algebra());
        for t in &self.terms {
            acc += &t.plane.scale(t.theta);
        }
        acc
    }

    /// `|Φ| = sqrt(Σ θ_i^2)`, the geodesic distance in the Grassmannian.
    pub fn norm(&self) -> T {
        self.terms.iter().map(|t| t.theta * t.theta).sum::<T>().sqrt()
    }

    /// `t Φ`, keeping the planes.
    pub fn scaled(&self, t: T) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|x| PlaneTerm { index: x.index, theta: x.theta * t, plane: x.plane.clone() })
            .collect();
        AngleBivector { principal: self.principal.clone(), terms, oriented: self.oriented }
    }

    /// Whether the bivector is independent of the choice of principal bases.
    pub fn is_unique(&self) -> bool {
        let pd = &self.principal;
        let m = pd.m();
        if m == 0 {
            return true;
        }
        let tol = pd.tolerance();
        if !self.oriented {
            return !pd.is_right_angle(m - 1);
        }
        let plus = |i: usize| -> T { self.terms.iter().find(|t| t.index == i).map_or_else(T::zero, |t| t.theta) };
        let last = plus(m - 1);
        let prev = if m >= 2 { plus(m - 2) } else { T::zero() };
        (prev + last - T::PI()).abs() >= tol.angle
    }

    /// `e^Φ = Π (cos θ_i + I_i sin θ_i)`.
    pub fn exp(&self) -> Multivector<T> {
        let alg = self.principal.algebra();
        let mut acc = Multivector::one(alg);
        for t in &self.terms {
            let rotor = &Multivector::scalar(alg, t.theta.cos()) + &t.plane.scale(t.theta.sin());
            acc = &acc * &rotor;
        }
        acc
    }

    /// `cosh Φ`: the terms of the product expansion with an even number of
    /// principal bivectors.
    pub fn cosh(&self) -> Multivector<T> {
        self.parity_part(0)
    }

    /// `sinh Φ`: the terms with an odd number of principal bivectors.
    pub fn sinh(&self) -> Multivector<T> {
        self.parity_part(1)
    }

    fn parity_part(&self, parity: usize) -> Multivector<T> {
        let mut acc = Multivector::zero(self.principal.algebra());
        for (set, coef, prod) in expansion(&self.terms, self.principal.algebra()) {
            if set.len() % 2 == parity {
                acc += &prod.scale(coef);
            }
        }
        acc
    }
}

/// Orthonormal basis of `span(a) + span(b)` where `a` is orthonormal.
fn joint_span<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = a.to_vec();
    for v in b {
        let mut w = v.clone();
        reject_from(&mut w, &out);
        let r = norm(&w);
        if r > T::lit(1e-6) {
            out.push(scaled(T::one() / r, &w));
        }
    }
    out
}

/// All products `Π_{i∉S} cos θ_i Π_{i∈S} sin θ_i` and `I_S` over subsets `S`
/// of the terms, ordered by size then lexicographically.
fn expansion<T: Scalar>(terms: &[PlaneTerm<T>], alg: crate::algebra::Algebra) -> Vec<(Vec<usize>, T, Multivector<T>)> {
    let k = terms.len();
    let mut subsets: Vec<Vec<usize>> =
        (0u32..(1 << k)).map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .into_iter()
        .map(|set| {
            let mut coef = T::one();
            let mut prod = Multivector::one(alg);
            for (i, t) in terms.iter().enumerate() {
                if set.contains(&i) {
                    coef *= t.theta.sin();
                    prod = &prod * &t.plane;
                } else {
                    coef *= t.theta.cos();
                }
            }
            let indices = set.iter().map(|&i| terms[i].index).collect();
            (indices, coef, prod)
        })
        .collect()
}

/// Non-oriented angle bivector `Φ_{V,W}` of two subspaces.
pub fn angle_bivector<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<AngleBivector<T>> {
    let pd = PrincipalData::compute(&v.unit_blade(), &w.unit_blade(), tol)?;
    AngleBivector::from_principal(pd, false)
}

/// Oriented angle bivector `Φ_{A,B}` of two blades.
pub fn oriented_angle_bivector<T: Scalar>(a: &Blade<T>, b: &Blade<T>, tol: &Tolerance<T>) -> Result<AngleBivector<T>> {
    let pd = PrincipalData::compute(a, b, tol)?;
    AngleBivector::from_principal(pd, true)
}

/// Closed-form `e^Φ`.
pub fn exp_angle_bivector<T: Scalar>(phi: &AngleBivector<T>) -> Multivector<T> {
    phi.exp()
}

/// Sandwich `reverse(R) X R` of a vector, kept at grade 1.
fn rotate_vector<T: Scalar>(v: &[T], rotor: &Multivector<T>, rev: &Multivector<T>) -> Result<Vec<T>> {
    let x = Multivector::vector(rotor.algebra(), v)?;
    Ok((&(rev * &x) * rotor).vector_part())
}

/// Transports a unit blade `E` spanning the source subspace of `Φ` by
/// `e^{-Φ/2} E e^{Φ/2}`; the factors are rotated individually.
pub fn rotor_transport<T: Scalar>(e: &Blade<T>, phi: &AngleBivector<T>) -> Result<Blade<T>> {
    let pd = phi.principal();
    let tol = pd.tolerance();
    if (e.norm() - T::one()).abs() > tol.structural {
        return Err(Error::NotUnitBlade { norm: e.norm().to_f64_lossy() });
    }
    let source = Subspace::from_orthonormal(pd.algebra(), pd.e_basis().to_vec(), tol)?;
    if e.grade() != source.dim() {
        return Err(Error::SubspaceMismatch);
    }
    let inside = project_blade(e, &source)?.norm();
    if T::one() - inside > tol.structural * T::lit(10.0) {
        return Err(Error::SubspaceMismatch);
    }
    let half = phi.scaled(T::lit(0.5)).exp();
    let rev = half.reverse();
    let mv = &(&rev * e.multivector()) * &half;
    let mut factors = Vec::with_capacity(e.grade());
    for f in e.factors() {
        factors.push(rotate_vector(f, &half, &rev)?);
    }
    let sub = Subspace::from_orthonormal(pd.algebra(), factors, &Tolerance { structural: T::lit(1e-6), ..*tol })?;
    let moved = crate::blade::blade_from_frame(&sub, e.scale());
    debug_assert!(moved.multivector().approx_eq(&mv, T::lit(1e-6)));
    Ok(moved)
}

/// The point `F(t) = e^{-tΦ/2} E e^{tΦ/2}` of the minimal geodesic,
/// `t ∈ [0, 1]`.
pub fn geodesic_sample<T: Scalar>(phi: &AngleBivector<T>, e: &Blade<T>, t: T) -> Result<Blade<T>> {
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::ParameterOutOfRange(format!("geodesic parameter {t} not in [0, 1]")));
    }
    rotor_transport(e, &phi.scaled(t))
}

/// Arc length of the geodesic, `|Φ|`.
pub fn geodesic_length<T: Scalar>(phi: &AngleBivector<T>) -> T {
    phi.norm()
}

// =======================================================================
// Plücker decomposition
// =======================================================================

/// One term of `e^Φ = Σ cos Θ_{V,W_i} I_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerTerm<T> {
    /// Zero-based principal indices in the multi-index.
    pub indices: Vec<usize>,
    /// `cos Θ_{V,W_i}` (times `ε` for an oriented bivector).
    pub coefficient: T,
    /// `I_i`, the ordered product of the principal bivectors.
    pub bivector_product: Multivector<T>,
    /// `F_i = I_i F`: `F` with each `f_i` replaced by `e_i^⊥` for `i` in the
    /// multi-index.
    pub coordinate_blade: Multivector<T>,
}

/// Decomposition of `e^Φ` over multi-indices of the planes with nonzero
/// angle. The squared coefficients sum to one.
pub fn plucker_decomposition<T: Scalar>(phi: &AngleBivector<T>) -> Vec<PluckerTerm<T>> {
    let pd = phi.principal();
    let alg = pd.algebra();
    let m = pd.m();
    let terms: Vec<PlaneTerm<T>> =
        (0..m).filter_map(|i| pd.plane(i).map(|plane| PlaneTerm { index: i, theta: pd.thetas()[i], plane })).collect();
    let s = phi.sign().value::<T>();
    let f = Multivector::product_of_vectors(alg, &pd.f_basis()[..m]).expect("consistent dimensions");
    expansion(&terms, alg)
        .into_iter()
        .map(|(indices, coef, prod)| {
            let coordinate_blade = &prod * &f;
            PluckerTerm { indices, coefficient: s * coef, bivector_product: prod, coordinate_blade }
        })
        .collect()
}

/// A vector of the basis `β_Y = (f_1..f_d, e_{d+1}^⊥, f_{d+1}, ...)` of
/// `Y = V + W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum YVector {
    /// `f_i` (zero-based).
    F(usize),
    /// `e_i^⊥` (zero-based).
    EPerp(usize),
}

impl YVector {
    pub fn index(self) -> usize {
        match self {
            YVector::F(i) | YVector::EPerp(i) => i,
        }
    }
}

/// By principal index, then `f_i` before `e_i^⊥`.
impl Ord for YVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |y: &YVector| (y.index(), matches!(y, YVector::EPerp(_)));
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for YVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for YVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YVector::F(i) => write!(f, "f{}", i + 1),
            YVector::EPerp(i) => write!(f, "e{}perp", i + 1),
        }
    }
}

/// A Plücker coordinate of `[A]` in the coordinate blades of `β_Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerCoordinate<T> {
    pub factors: Vec<YVector>,
    pub value: T,
}

impl<T> PluckerCoordinate<T> {
    pub fn label(&self) -> String {
        self.factors.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn y_vector<T: Scalar>(pd: &PrincipalData<T>, y: YVector) -> Result<Vec<T>> {
    match y {
        YVector::F(i) if i < pd.m() => Ok(pd.f_basis()[i].clone()),
        YVector::EPerp(i) if i < pd.m() => {
            pd.e_perp(i).ok_or_else(|| Error::ParameterOutOfRange(format!("{y} undefined for a zero angle")))
        }
        _ => Err(Error::ParameterOutOfRange(format!("{y} out of range"))),
    }
}

/// Coordinate of the unit blade `e_1...e_m` on the blade `y_1 ... y_m`
/// formed from the given factors in the given order.
pub fn plucker_coordinate_of<T: Scalar>(pd: &PrincipalData<T>, factors: &[YVector]) -> Result<T> {
    let alg = pd.algebra();
    let vs: Vec<Vec<T>> = factors.iter().map(|y| y_vector(pd, *y)).collect::<Result<_>>()?;
    let c = Multivector::product_of_vectors(alg, &vs)?;
    let e = Multivector::product_of_vectors(alg, &pd.e_basis()[..pd.m()])?;
    c.reverse().scalar_product(&e)
}

/// All Plücker coordinates of `[A]` (its projective part when `p > q`) in
/// the coordinate `m`-blades of `β_Y`.
///
/// Factors of each blade are ordered by principal index with `f_i` before
/// `e_i^⊥`. The blades of the subspaces `W_i` come first, by multi-index
/// size then lexicographically; the remaining blades follow in
/// lexicographic order. The coordinates are unit-normalized.
pub fn plucker_coordinates<T: Scalar>(pd: &PrincipalData<T>) -> Result<Vec<PluckerCoordinate<T>>> {
    let m = pd.m();
    let mut basis: Vec<YVector> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    for i in 0..m {
        basis.push(YVector::F(i));
        if !pd.is_zero_angle(i) {
            basis.push(YVector::EPerp(i));
            active.push(i);
        }
    }
    let shared: Vec<YVector> = (0..m).filter(|i| pd.is_zero_angle(*i)).map(YVector::F).collect();

    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << active.len()))
        .map(|mask| (0..active.len()).filter(|k| mask & (1 << k) != 0).map(|k| active[k]).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut blades: Vec<Vec<YVector>> = subsets
        .iter()
        .map(|set| {
            let mut fs = shared.clone();
            for &i in &active {
                fs.push(if set.contains(&i) { YVector::EPerp(i) } else { YVector::F(i) });
            }
            fs.sort();
            fs
        })
        .collect();

    let mut rest: Vec<Vec<YVector>> = combinations(&basis, m)
        .into_iter()
        .map(|mut c| {
            c.sort();
            c
        })
        .filter(|c| !blades.contains(c))
        .collect();
    rest.sort();
    blades.extend(rest);

    blades
        .into_iter()
        .map(|factors| {
            let value = plucker_coordinate_of(pd, &factors)?;
            Ok(PluckerCoordinate { factors, value })
        })
        .collect()
}

fn combinations<X: Clone>(items: &[X], k: usize) -> Vec<Vec<X>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
    }
    out
}

/// Coefficient of `v` along `e_i` and `f_i^⊥`, the geodesic oracle
/// components; exposed for diagnostics.
pub fn plane_coordinates<T: Scalar>(pd: &PrincipalData<T>, i: usize, v: &[T]) -> Option<(T, T)> {
    let fp = pd.f_perp(i)?;
    Some((dot(v, &pd.e_basis()[i]), dot(v, &fp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn blade(n: usize, vs: &[Vec<f64>]) -> Blade<f64> {
        Blade::from_vectors(Algebra::new(n).unwrap(), vs, &tol()).unwrap()
    }

    #[test]
    fn line_rotation() {
        let a = blade(2, &[vec![1.0, 0.0]]);
        let b = blade(2, &[vec![1.0, 1.0]]).normalized().unwrap();
        let phi = oriented_angle_bivector(&a, &b, &tol()).unwrap();
        assert_eq!(phi.terms().len(), 1);
        assert_abs_diff_eq!(phi.terms()[0].theta, FRAC_PI_4, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.terms()[0].plane.get(0b11), 1.0, epsilon = 1e-15);
        let moved = rotor_transport(&a, &phi).unwrap();
        assert!(moved.multivector().approx_eq(b.multivector(), 1e-14));
        assert!(phi.is_unique());
    }

    #[test]
    fn opposite_lines_need_a_plane() {
        let a = blade(2, &[vec![1.0, 0.0]]);
        let b = a.scaled(-1.0);
        let phi = oriented_angle_bivector(&a, &b, &tol()).unwrap();
        assert_abs_diff_eq!(phi.terms()[0].theta, PI, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.exp().scalar_part(), -1.0, epsilon = 1e-15);
        assert!(!phi.is_unique());
        let moved = rotor_transport(&a, &phi).unwrap();
        assert!(moved.multivector().approx_eq(b.multivector(), 1e-14));

        let full = blade(1, &[vec![1.0]]);
        let r = oriented_angle_bivector(&full, &full.scaled(-1.0), &tol());
        assert_eq!(r.unwrap_err(), Error::NoRotationPlane);
    }

    #[test]
    fn cosh_and_sinh_split_exp() {
        let a = blade(4, &[vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]]);
        let b = blade(4, &[vec![1.0, 0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0, 3.0]]);
        let phi = oriented_angle_bivector(&a, &b, &tol()).unwrap();
        let sum = &phi.cosh() + &phi.sinh();
        assert!(sum.approx_eq(&phi.exp(), 1e-14));
        let series = phi.as_multivector().exp(&Tolerance::new(1e-10, 1e-16).unwrap()).unwrap();
        assert!(series.approx_eq(&phi.exp(), 1e-13));
    }

    #[test]
    fn right_angle_makes_bivector_ambiguous() {
        let a = blade(3, &[vec![1.0, 0.0, 0.0]]);
        let b = blade(3, &[vec![0.0, 1.0, 0.0]]);
        let phi = angle_bivector(&a.subspace(), &b.subspace(), &tol()).unwrap();
        assert_abs_diff_eq!(phi.norm(), FRAC_PI_2, epsilon = 1e-15);
        assert!(!phi.is_unique());
    }

    #[test]
    fn plucker_coefficients_are_unit() {
        let a = blade(5, &[vec![1.0, 0.0, 0.3, 0.0, 0.1], vec![0.0, 1.0, 0.0, 0.7, 0.0]]);
        let b =
            blade(5, &[vec![1.0, 0.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 0.0, 1.0]]);
        let phi = oriented_angle_bivector(&a, &b, &tol()).unwrap();
        let terms = plucker_decomposition(&phi);
        let total: f64 = terms.iter().map(|t| t.coefficient * t.coefficient).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-14);
        let mut sum = Multivector::zero(Algebra::new(5).unwrap());
        for t in &terms {
            sum += &t.bivector_product.scale(t.coefficient);
        }
        assert!(sum.approx_eq(&phi.exp(), 1e-14));
        let coords = plucker_coordinates(phi.principal()).unwrap();
        let total: f64 = coords.iter().map(|c| c.value * c.value).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-14);
    }
}
