//! Principal angles, principal bases and the decompositions built on them.

use std::ops::{Mul, Neg};

use crate::algebra::Algebra;
use crate::blade::{blade_from_frame, Blade, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{self, axpy, dot, orthonormality_defect, scaled, Matrix};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// A sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    /// Sign of `x`, with zero counted as positive.
    pub fn of<T: Scalar>(x: T) -> Sign {
        if x < T::zero() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Positive => T::one(),
            Sign::Negative => -T::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Principal angles of a pair of blades together with associated principal
/// bases and orientation signs.
///
/// With `p = grade(A)`, `q = grade(B)` and `m = min(p, q)`: `e` holds `p`
/// orthonormal vectors spanning `[A]`, `f` holds `q` spanning `[B]`,
/// `e_i · f_j = δ_ij cos θ_i`, and `A = ε_A |A| e_1...e_p`,
/// `B = ε_B |B| f_1...f_q`. Angles ascend.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalData<T> {
    alg: Algebra,
    thetas: Vec<T>,
    e: Vec<Vec<T>>,
    f: Vec<Vec<T>>,
    eps_a: Sign,
    eps_b: Sign,
    norm_a: T,
    norm_b: T,
    tol: Tolerance<T>,
}

impl<T: Scalar> PrincipalData<T> {
    /// Principal data from the SVD of the cross-Gram matrix of the blades'
    /// orthonormal factors.
    ///
    /// Sign conventions: `ε_A` is made `+1` by flipping the pair
    /// `(e_1, f_1)`; `ε_B` is then made `+1` by flipping the last `f` when
    /// `q > p`, by an extra flip on the `e` side when `p > q`, or by flipping
    /// `f_m` when the last angle is right. Otherwise `ε_B` carries the
    /// relative orientation.
    pub fn compute(a: &Blade<T>, b: &Blade<T>, tol: &Tolerance<T>) -> Result<Self> {
        a.algebra().check_same(&b.algebra())?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroBlade);
        }
        let alg = a.algebra();
        let (p, q) = (a.grade(), b.grade());
        let m = p.min(q);
        let ea = a.factors();
        let fb = b.factors();

        let (mut e, mut f) = if m == 0 {
            (ea.to_vec(), fb.to_vec())
        } else {
            let gram = Matrix::cross_gram(ea, fb);
            let svd = linalg::svd(&gram);
            let e: Vec<Vec<T>> = (0..p).map(|i| combine(ea, &svd.u.column(i))).collect();
            let f: Vec<Vec<T>> = (0..q).map(|j| combine(fb, &svd.v.column(j))).collect();
            (e, f)
        };

        let mut thetas = angles_from_pairs(&e, &f, m);
        sort_pairs(&mut thetas, &mut e, &mut f);

        let mut eps_a = frame_sign(alg, &e, a)?;
        let mut eps_b = frame_sign(alg, &f, b)?;
        if eps_a.is_negative() {
            if m >= 1 {
                negate(&mut e[0]);
                negate(&mut f[0]);
                eps_b = -eps_b;
            } else {
                negate(&mut e[p - 1]);
            }
            eps_a = Sign::Positive;
        }
        if eps_b.is_negative() {
            if q > m {
                negate(&mut f[q - 1]);
                eps_b = Sign::Positive;
            } else if p > m && m >= 1 {
                negate(&mut e[0]);
                negate(&mut f[0]);
                negate(&mut e[p - 1]);
                eps_b = Sign::Positive;
            } else if m >= 1 && tol.is_right_angle(thetas[m - 1]) {
                negate(&mut f[m - 1]);
                eps_b = Sign::Positive;
            }
        }

        Ok(PrincipalData { alg, thetas, e, f, eps_a, eps_b, norm_a: a.norm(), norm_b: b.norm(), tol: *tol })
    }

    /// Principal data from explicitly chosen principal bases.
    ///
    /// Checks orthonormality, that the bases span `[A]` and `[B]`, the
    /// relation `e_i · f_j = δ_ij cos θ_i` with nonnegative cosines, and that
    /// angles ascend. Signs are read off the given bases.
    pub fn from_bases(a: &Blade<T>, b: &Blade<T>, e: Vec<Vec<T>>, f: Vec<Vec<T>>, tol: &Tolerance<T>) -> Result<Self> {
        a.algebra().check_same(&b.algebra())?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroBlade);
        }
        let alg = a.algebra();
        let (p, q) = (a.grade(), b.grade());
        if e.len() != p || f.len() != q {
            return Err(Error::NotPrincipal(format!("expected {p} and {q} vectors, got {} and {}", e.len(), f.len())));
        }
        for v in e.iter().chain(&f) {
            if v.len() != alg.dim() {
                return Err(Error::DimensionMismatch { left: alg.dim(), right: v.len() });
            }
        }
        let eps = tol.structural;
        for basis in [&e, &f] {
            let deviation = orthonormality_defect(basis);
            if deviation > eps {
                return Err(Error::NotOrthonormal { deviation: deviation.to_f64_lossy() });
            }
        }
        let eps_a = spanning_sign(alg, &e, a, eps).ok_or_else(|| Error::NotPrincipal("e does not span [A]".into()))?;
        let eps_b = spanning_sign(alg, &f, b, eps).ok_or_else(|| Error::NotPrincipal("f does not span [B]".into()))?;
        let m = p.min(q);
        for (i, ei) in e.iter().enumerate() {
            for (j, fj) in f.iter().enumerate() {
                let c = dot(ei, fj);
                let bad = if i == j && i < m { c < -eps } else { c.abs() > eps };
                if bad {
                    return Err(Error::NotPrincipal(format!("e{} · f{} = {c}", i + 1, j + 1)));
                }
            }
        }
        let thetas = angles_from_pairs(&e, &f, m);
        for w in thetas.windows(2) {
            if w[1] < w[0] - tol.angle {
                return Err(Error::NotPrincipal("angles are not ascending".into()));
            }
        }
        Ok(PrincipalData { alg, thetas, e, f, eps_a, eps_b, norm_a: a.norm(), norm_b: b.norm(), tol: *tol })
    }

    /// Same data with the roles of the two blades exchanged.
    pub fn swapped(&self) -> Self {
        PrincipalData {
            alg: self.alg,
            thetas: self.thetas.clone(),
            e: self.f.clone(),
            f: self.e.clone(),
            eps_a: self.eps_b,
            eps_b: self.eps_a,
            norm_a: self.norm_b,
            norm_b: self.norm_a,
            tol: self.tol,
        }
    }

    // ===================================================================
    // Accessors
    // ===================================================================

    #[inline]
    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    #[inline]
    pub fn tolerance(&self) -> &Tolerance<T> {
        &self.tol
    }

    /// Grade of the first blade.
    #[inline]
    pub fn p(&self) -> usize {
        self.e.len()
    }

    /// Grade of the second blade.
    #[inline]
    pub fn q(&self) -> usize {
        self.f.len()
    }

    /// `min(p, q)`, the number of principal angles.
    #[inline]
    pub fn m(&self) -> usize {
        self.thetas.len()
    }

    /// Principal angles `θ_1 <= ... <= θ_m`.
    #[inline]
    pub fn thetas(&self) -> &[T] {
        &self.thetas
    }

    /// Principal basis of the first subspace.
    #[inline]
    pub fn e_basis(&self) -> &[Vec<T>] {
        &self.e
    }

    /// Principal basis of the second subspace.
    #[inline]
    pub fn f_basis(&self) -> &[Vec<T>] {
        &self.f
    }

    #[inline]
    pub fn eps_a(&self) -> Sign {
        self.eps_a
    }

    #[inline]
    pub fn eps_b(&self) -> Sign {
        self.eps_b
    }

    /// `ε_A ε_B`.
    #[inline]
    pub fn eps_ab(&self) -> Sign {
        self.eps_a * self.eps_b
    }

    #[inline]
    pub fn norm_a(&self) -> T {
        self.norm_a
    }

    #[inline]
    pub fn norm_b(&self) -> T {
        self.norm_b
    }

    /// Number of zero angles (the dimension of the intersection when
    /// `p <= q`).
    pub fn zero_count(&self) -> usize {
        self.thetas.iter().filter(|t| self.tol.is_zero_angle(**t)).count()
    }

    /// Largest index (1-based) whose angle is not a right angle; 0 when every
    /// angle is right.
    pub fn last_non_right(&self) -> usize {
        self.thetas.iter().rposition(|t| !self.tol.is_right_angle(*t)).map_or(0, |i| i + 1)
    }

    pub fn is_zero_angle(&self, i: usize) -> bool {
        self.tol.is_zero_angle(self.thetas[i])
    }

    pub fn is_right_angle(&self, i: usize) -> bool {
        self.tol.is_right_angle(self.thetas[i])
    }

    /// Relative orientation `ε_A ε_B`; determinate when the grades agree and
    /// no angle is right, i.e. when `reverse(A) * B != 0`.
    pub fn orientation(&self) -> Orientation {
        let determinate = self.p() == self.q() && !self.thetas.last().is_some_and(|t| self.tol.is_right_angle(*t));
        Orientation { sign: self.eps_ab(), determinate }
    }

    /// Partial orthogonality of the first subspace to the second: it is
    /// larger, or some principal angle is right.
    pub fn is_partially_orthogonal(&self) -> bool {
        self.p() > self.q() || self.thetas.last().is_some_and(|t| self.tol.is_right_angle(*t))
    }

    // ===================================================================
    // Derived vectors
    // ===================================================================

    /// `e_i^⊥`, the normalized component of `e_i` orthogonal to the second
    /// subspace (zero-based `i < m`, nonzero angle).
    pub fn e_perp(&self, i: usize) -> Option<Vec<T>> {
        orthogonal_part(&self.e[i], &self.f[i], self.thetas[i], &self.tol)
    }

    /// `f_i^⊥`, the normalized component of `f_i` orthogonal to the first
    /// subspace (zero-based `i < m`, nonzero angle).
    pub fn f_perp(&self, i: usize) -> Option<Vec<T>> {
        orthogonal_part(&self.f[i], &self.e[i], self.thetas[i], &self.tol)
    }

    /// Unit principal bivector `I_i = e_i ∧ f_i / |e_i ∧ f_i|`; `None` for a
    /// zero angle.
    pub fn plane(&self, i: usize) -> Option<Multivector<T>> {
        let fp = self.f_perp(i)?;
        Some(wedge2(self.alg, &self.e[i], &fp))
    }

    /// `e_1 ... e_p`.
    pub fn e_blade(&self) -> Multivector<T> {
        Multivector::product_of_vectors(self.alg, &self.e).expect("consistent dimensions")
    }

    /// `f_1 ... f_q`.
    pub fn f_blade(&self) -> Multivector<T> {
        Multivector::product_of_vectors(self.alg, &self.f).expect("consistent dimensions")
    }

    /// First blade as reconstructed from the data, `ε_A |A| e_1...e_p`.
    pub fn a_blade(&self) -> Blade<T> {
        let sub = Subspace::from_orthonormal(self.alg, self.e.clone(), &self.tol).expect("orthonormal basis");
        blade_from_frame(&sub, self.eps_a.value::<T>() * self.norm_a)
    }

    /// Second blade as reconstructed from the data, `ε_B |B| f_1...f_q`.
    pub fn b_blade(&self) -> Blade<T> {
        self.swapped().a_blade()
    }

    // ===================================================================
    // Partially orthogonal decompositions
    // ===================================================================

    /// Decomposition of the second blade relative to the first:
    /// `B = B_P ∧ B_⊥` with `B_P = ε_B |B| f_1...f_m` and
    /// `B_⊥ = f_{m+1}...f_q`.
    pub fn po_of_b(&self) -> PoDecomposition<T> {
        let m = self.m();
        let proj_sub =
            Subspace::from_orthonormal(self.alg, self.f[..m].to_vec(), &self.tol).expect("orthonormal basis");
        let perp_sub =
            Subspace::from_orthonormal(self.alg, self.f[m..].to_vec(), &self.tol).expect("orthonormal basis");
        PoDecomposition {
            proj: blade_from_frame(&proj_sub, self.eps_b.value::<T>() * self.norm_b),
            perp: blade_from_frame(&perp_sub, T::one()),
            proj_subspace: proj_sub,
            perp_subspace: perp_sub,
        }
    }

    /// Decomposition of the first blade relative to the second,
    /// `A = A_P ∧ A_⊥`.
    pub fn po_of_a(&self) -> PoDecomposition<T> {
        self.swapped().po_of_b()
    }
}

/// `B = B_P ∧ B_⊥`: the projective part and the orthogonal remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct PoDecomposition<T> {
    pub proj: Blade<T>,
    pub perp: Blade<T>,
    pub proj_subspace: Subspace<T>,
    pub perp_subspace: Subspace<T>,
}

/// Relative orientation of two blades.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orientation {
    pub sign: Sign,
    /// False when the sign depends on the choice of principal bases
    /// (the blades are partially orthogonal or of different grades).
    pub determinate: bool,
}

/// Principal data of two blades; see [`PrincipalData::compute`].
pub fn principal_data<T: Scalar>(a: &Blade<T>, b: &Blade<T>, tol: &Tolerance<T>) -> Result<PrincipalData<T>> {
    PrincipalData::compute(a, b, tol)
}

/// Principal angles of two subspaces, ascending. Empty when either is
/// trivial.
pub fn principal_angles<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<Vec<T>> {
    v.algebra().check_same(&w.algebra())?;
    let m = v.dim().min(w.dim());
    if m == 0 {
        return Ok(Vec::new());
    }
    let gram = Matrix::cross_gram(v.frame(), w.frame());
    let svd = linalg::svd(&gram);
    let e: Vec<Vec<T>> = (0..v.dim()).map(|i| combine(v.frame(), &svd.u.column(i))).collect();
    let f: Vec<Vec<T>> = (0..m).map(|j| combine(w.frame(), &svd.v.column(j))).collect();
    let mut thetas = angles_from_pairs(&e, &f, m);
    thetas.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(thetas)
}

/// Sign of `reverse(A) * B` when it is nonzero, otherwise `ε_A ε_B` from the
/// principal bases, flagged as basis dependent.
pub fn relative_orientation<T: Scalar>(a: &Blade<T>, b: &Blade<T>, tol: &Tolerance<T>) -> Result<Orientation> {
    let pd = PrincipalData::compute(a, b, tol)?;
    let s = a.multivector().reverse().scalar_product(b.multivector())?;
    if s.abs() > tol.structural * a.norm() * b.norm() {
        return Ok(Orientation { sign: Sign::of(s), determinate: true });
    }
    Ok(Orientation { sign: pd.eps_ab(), determinate: false })
}

/// `V` is partially orthogonal to `W`.
pub fn partially_orthogonal<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>, tol: &Tolerance<T>) -> Result<bool> {
    if v.dim() > w.dim() {
        return Ok(true);
    }
    let thetas = principal_angles(v, w)?;
    Ok(thetas.last().is_some_and(|t| tol.is_right_angle(*t)))
}

// =======================================================================
// Helpers
// =======================================================================

fn combine<T: Scalar>(frame: &[Vec<T>], coords: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); frame[0].len()];
    for (v, c) in frame.iter().zip(coords) {
        axpy(*c, v, &mut out);
    }
    out
}

fn negate<T: Scalar>(v: &mut [T]) {
    for x in v.iter_mut() {
        *x = -*x;
    }
}

/// `θ_i = atan2(|f_i - P_V f_i|, e_i · f_i)` for the first `m` pairs, where
/// `e` spans `V`. The sine is taken from the rejection so that small angles keep full relative
/// accuracy.
fn angles_from_pairs<T: Scalar>(e: &[Vec<T>], f: &[Vec<T>], m: usize) -> Vec<T> {
    (0..m)
        .map(|i| {
            let c = dot(&e[i], &f[i]).max(T::zero());
            let mut r = f[i].clone();
            for ek in e {
                let t = dot(ek, &f[i]);
                axpy(-t, ek, &mut r);
            }
            linalg::norm(&r).atan2(c)
        })
        .collect()
}

fn sort_pairs<T: Scalar>(thetas: &mut [T], e: &mut [Vec<T>], f: &mut [Vec<T>]) {
    let m = thetas.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| thetas[x].partial_cmp(&thetas[y]).unwrap_or(std::cmp::Ordering::Equal).then(x.cmp(&y)));
    let t2: Vec<T> = order.iter().map(|&k| thetas[k]).collect();
    let e2: Vec<Vec<T>> = order.iter().map(|&k| e[k].clone()).collect();
    let f2: Vec<Vec<T>> = order.iter().map(|&k| f[k].clone()).collect();
    thetas.copy_from_slice(&t2);
    for (i, v) in e2.into_iter().enumerate() {
        e[i] = v;
    }
    for (i, v) in f2.into_iter().enumerate() {
        f[i] = v;
    }
}

/// Sign of `reverse(v_1...v_k) * X / |X|`.
fn frame_sign<T: Scalar>(alg: Algebra, frame: &[Vec<T>], x: &Blade<T>) -> Result<Sign> {
    let unit = Multivector::product_of_vectors(alg, frame)?;
    let s = unit.reverse().scalar_product(x.multivector())?;
    Ok(Sign::of(s))
}

/// Like [`frame_sign`] but requires `|s| = |X|` up to `eps`.
fn spanning_sign<T: Scalar>(alg: Algebra, frame: &[Vec<T>], x: &Blade<T>, eps: T) -> Option<Sign> {
    let unit = Multivector::product_of_vectors(alg, frame).ok()?;
    let s = unit.reverse().scalar_product(x.multivector()).ok()? / x.norm();
    if (s.abs() - T::one()).abs() > eps * T::lit(10.0) {
        return None;
    }
    Some(Sign::of(s))
}

fn orthogonal_part<T: Scalar>(x: &[T], y: &[T], theta: T, tol: &Tolerance<T>) -> Option<Vec<T>> {
    if tol.is_zero_angle(theta) {
        return None;
    }
    let mut r = x.to_vec();
    axpy(-dot(x, y), y, &mut r);
    let n = linalg::norm(&r);
    Some(scaled(T::one() / n, &r))
}

/// Geometric product of two orthogonal vectors, i.e. their wedge.
pub(crate) fn wedge2<T: Scalar>(alg: Algebra, a: &[T], b: &[T]) -> Multivector<T> {
    let va = Multivector::vector(alg, a).expect("vector length");
    let vb = Multivector::vector(alg, b).expect("vector length");
    va.outer_product(&vb).expect("same algebra")
}
