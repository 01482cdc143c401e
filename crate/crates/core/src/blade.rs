//! Subspaces, blades, and the passage between them.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{self, complete_basis, dot, orthonormality_defect, project_onto};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// A linear subspace of `R^n`, held as an orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    alg: Algebra,
    frame: Vec<Vec<T>>,
}

impl<T: Scalar> Subspace<T> {
    /// Orthonormalizes `vectors` (modified Gram-Schmidt, re-orthogonalized).
    pub fn from_vectors(alg: Algebra, vectors: &[Vec<T>], tol: &Tolerance<T>) -> Result<Self> {
        check_lengths(alg, vectors)?;
        let (frame, _) = linalg::orthonormalize(vectors, tol.structural)?;
        Ok(Subspace { alg, frame })
    }

    /// Wraps a frame that is already orthonormal.
    pub fn from_orthonormal(alg: Algebra, frame: Vec<Vec<T>>, tol: &Tolerance<T>) -> Result<Self> {
        check_lengths(alg, &frame)?;
        let deviation = orthonormality_defect(&frame);
        if deviation > tol.structural {
            return Err(Error::NotOrthonormal { deviation: deviation.to_f64_lossy() });
        }
        Ok(Subspace { alg, frame })
    }

    /// The zero subspace.
    pub fn trivial(alg: Algebra) -> Self {
        Subspace { alg, frame: Vec::new() }
    }

    #[inline]
    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.alg.dim()
    }

    #[inline]
    pub fn frame(&self) -> &[Vec<T>] {
        &self.frame
    }

    pub fn project(&self, v: &[T]) -> Vec<T> {
        project_onto(v, &self.frame)
    }

    /// Orthogonal complement, completed deterministically from the canonical
    /// basis.
    pub fn complement(&self) -> Self {
        let n = self.ambient_dim();
        let full = complete_basis(&self.frame, n, n);
        Subspace { alg: self.alg, frame: full[self.dim()..].to_vec() }
    }

    /// True when `v` lies in the subspace up to `eps |v|`.
    pub fn contains(&self, v: &[T], eps: T) -> bool {
        let p = self.project(v);
        let r: Vec<T> = v.iter().zip(&p).map(|(a, b)| *a - *b).collect();
        linalg::norm(&r) <= eps * linalg::norm(v).max(T::one())
    }

    /// Unit blade of the frame, `q1 q2 ... qp`.
    pub fn unit_blade(&self) -> Blade<T> {
        blade_from_frame(self, T::one())
    }
}

fn check_lengths<T>(alg: Algebra, vectors: &[Vec<T>]) -> Result<()> {
    for v in vectors {
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch { left: alg.dim(), right: v.len() });
        }
    }
    Ok(())
}

/// A multivector certified to be a `p`-blade, with an orthonormal
/// factorization `mv = scale * f1 ∧ ... ∧ fp`.
#[derive(Debug, Clone, PartialEq)]
pub struct Blade<T> {
    mv: Multivector<T>,
    grade: usize,
    norm: T,
    factors: Vec<Vec<T>>,
    scale: T,
}

impl<T: Scalar> Blade<T> {
    /// Wedge of arbitrary independent vectors.
    pub fn from_vectors(alg: Algebra, vectors: &[Vec<T>], tol: &Tolerance<T>) -> Result<Self> {
        check_lengths(alg, vectors)?;
        let (factors, r) = linalg::orthonormalize(vectors, tol.structural)?;
        let volume = r.iter().fold(T::one(), |acc, x| acc * *x);
        let sub = Subspace { alg, frame: factors };
        Ok(blade_from_frame(&sub, volume))
    }

    /// A scalar viewed as a 0-blade.
    pub fn scalar(alg: Algebra, x: T) -> Self {
        Blade { mv: Multivector::scalar(alg, x), grade: 0, norm: x.abs(), factors: Vec::new(), scale: x }
    }

    #[inline]
    pub fn multivector(&self) -> &Multivector<T> {
        &self.mv
    }

    #[inline]
    pub fn into_multivector(self) -> Multivector<T> {
        self.mv
    }

    #[inline]
    pub fn algebra(&self) -> Algebra {
        self.mv.algebra()
    }

    #[inline]
    pub fn grade(&self) -> usize {
        self.grade
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.norm
    }

    /// Orthonormal factors `f1..fp`.
    #[inline]
    pub fn factors(&self) -> &[Vec<T>] {
        &self.factors
    }

    /// Signed scale `s` with `mv = s * f1 ∧ ... ∧ fp`; `|s| = norm`.
    #[inline]
    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.norm.is_zero()
    }

    /// The subspace `[B]`.
    pub fn subspace(&self) -> Subspace<T> {
        Subspace { alg: self.algebra(), frame: self.factors.clone() }
    }

    /// `B / |B|`.
    pub fn normalized(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroBlade);
        }
        Ok(self.scaled(T::one() / self.norm))
    }

    pub fn scaled(&self, s: T) -> Self {
        Blade {
            mv: self.mv.scale(s),
            grade: self.grade,
            norm: self.norm * s.abs(),
            factors: self.factors.clone(),
            scale: self.scale * s,
        }
    }

    /// Reverse, `(-1)^{p(p-1)/2} B`.
    pub fn reverse(&self) -> Self {
        let mv = self.mv.reverse();
        let s = if crate::algebra::reverse_odd(self.grade) { -self.scale } else { self.scale };
        Blade { mv, grade: self.grade, norm: self.norm, factors: self.factors.clone(), scale: s }
    }

    /// `B⁻¹ = reverse(B) / |B|^2`.
    pub fn inverse(&self) -> Result<Multivector<T>> {
        blade_inverse(self)
    }
}

/// `scale * q1 q2 ... qp` for the orthonormal frame of `s`.
pub fn blade_from_frame<T: Scalar>(s: &Subspace<T>, scale: T) -> Blade<T> {
    let alg = s.algebra();
    let unit = Multivector::product_of_vectors(alg, s.frame()).expect("frame vectors match algebra");
    Blade { mv: unit.scale(scale), grade: s.dim(), norm: scale.abs(), factors: s.frame().to_vec(), scale }
}

/// Certifies that `m` is a blade and factorizes it.
///
/// The grade is the single component carrying more than
/// `eps_structural |m|`. Factors come from projecting the basis vectors of the
/// dominant basis blade (largest coefficient, lowest mask on ties) onto the
/// blade, then orthonormalizing. The result must reproduce `m` and pass the
/// simplicity test `(v ⌋ m) ∧ m = 0` for every basis vector `v`.
pub fn certify_blade<T: Scalar>(m: &Multivector<T>, tol: &Tolerance<T>) -> Result<Blade<T>> {
    let alg = m.algebra();
    let norm = m.norm();
    if norm.is_zero() {
        return Ok(Blade::scalar(alg, T::zero()));
    }
    let p = m.homogeneous_grade(tol.structural).ok_or(Error::NotHomogeneous)?;
    let mv = m.grade(p);
    let norm = mv.norm();
    if p == 0 {
        return Ok(Blade::scalar(alg, mv.scalar_part()));
    }

    let (factors, scale) = extract_factors(&mv, p)?;
    let rebuilt = Multivector::product_of_vectors(alg, &factors)?.scale(scale);
    let residual = (&rebuilt - &mv).norm();
    if residual > tol.structural * norm {
        return Err(Error::NotABlade { residual: (residual / norm).to_f64_lossy() });
    }
    // (x ⌋ B) ∧ B vanishes for blades of grade two and up; every vector is a blade.
    for i in (0..alg.dim()).filter(|_| p >= 2) {
        let v = Multivector::basis_vector(alg, i)?;
        let w = v.left_contraction(&mv)?.outer_product(&mv)?.norm();
        if w > tol.structural * norm * norm {
            return Err(Error::NotABlade { residual: (w / (norm * norm)).to_f64_lossy() });
        }
    }
    Ok(Blade { mv, grade: p, norm, factors, scale })
}

/// Factor extraction without verification; used by [`certify_blade`] and to
/// re-project a near-blade onto the blade it approximates.
pub(crate) fn extract_factors<T: Scalar>(mv: &Multivector<T>, p: usize) -> Result<(Vec<Vec<T>>, T)> {
    let alg = mv.algebra();
    let n = alg.dim();
    let mut pivot = 0usize;
    let mut best = T::zero();
    for mask in alg.masks_of_grade(p) {
        let c = mv.get(mask).abs();
        if c > best {
            best = c;
            pivot = mask;
        }
    }
    if best.is_zero() {
        return Err(Error::ZeroBlade);
    }
    let inv = mv.reverse().scale(T::one() / mv.norm_squared());
    let mut projected = Vec::with_capacity(p);
    for i in (0..n).filter(|i| pivot & (1 << i) != 0) {
        let e = Multivector::basis_vector(alg, i)?;
        let proj = e.left_contraction(mv)?.geometric_product(&inv)?;
        projected.push(proj.vector_part());
    }
    let (factors, _) =
        linalg::orthonormalize(&projected, T::lit(1e-6)).map_err(|_| Error::NotABlade { residual: f64::NAN })?;
    let unit = Multivector::product_of_vectors(alg, &factors)?;
    let scale = unit.reverse().scalar_product(mv)?;
    Ok((factors, scale))
}

/// Best blade approximation of a nearly-simple homogeneous multivector.
pub(crate) fn nearest_blade<T: Scalar>(m: &Multivector<T>, p: usize) -> Result<Blade<T>> {
    let alg = m.algebra();
    let mv = m.grade(p);
    if p == 0 {
        return Ok(Blade::scalar(alg, mv.scalar_part()));
    }
    let (factors, scale) = extract_factors(&mv, p)?;
    let sub = Subspace { alg, frame: factors };
    Ok(blade_from_frame(&sub, scale))
}

/// `B⁻¹ = reverse(B) / |B|^2`.
pub fn blade_inverse<T: Scalar>(b: &Blade<T>) -> Result<Multivector<T>> {
    if b.is_zero() {
        return Err(Error::ZeroBlade);
    }
    Ok(b.mv.reverse().scale(T::one() / (b.norm * b.norm)))
}

/// Orthogonal projection `P_W(B)`: the wedge of the projected factors.
pub fn project_blade<T: Scalar>(b: &Blade<T>, w: &Subspace<T>) -> Result<Multivector<T>> {
    b.algebra().check_same(&w.algebra())?;
    let alg = b.algebra();
    let mut acc = Multivector::scalar(alg, b.scale());
    for f in b.factors() {
        let pf = w.project(f);
        acc = acc.outer_product(&Multivector::vector(alg, &pf)?)?;
    }
    Ok(acc)
}

impl<T: Scalar> Multivector<T> {
    /// Dual with respect to a unit blade: `m J⁻¹`.
    pub fn dual(&self, j: &Blade<T>, tol: &Tolerance<T>) -> Result<Self> {
        if (j.norm() - T::one()).abs() > tol.structural {
            return Err(Error::NotUnitBlade { norm: j.norm().to_f64_lossy() });
        }
        self.geometric_product(&blade_inverse(j)?)
    }
}

/// Coordinates of `v` relative to an orthonormal frame.
pub fn coordinates<T: Scalar>(v: &[T], frame: &[Vec<T>]) -> Vec<T> {
    frame.iter().map(|q| dot(v, q)).collect()
}
