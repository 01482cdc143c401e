//! Dense multivectors and the product family.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::algebra::{blade_label, grade_of, reorder_odd, reverse_odd, Algebra};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A general element of the Clifford algebra of `R^n`, stored densely as
/// `2^n` coefficients indexed by basis-blade bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<T> {
    alg: Algebra,
    coeffs: Vec<T>,
}

impl<T: Scalar> Multivector<T> {
    // ===================================================================
    // Construction
    // ===================================================================

    pub fn new(alg: Algebra, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != alg.size() {
            return Err(Error::DimensionMismatch { left: alg.size(), right: coeffs.len() });
        }
        Ok(Multivector { alg, coeffs })
    }

    pub fn zero(alg: Algebra) -> Self {
        Multivector { alg, coeffs: vec![T::zero(); alg.size()] }
    }

    pub fn scalar(alg: Algebra, x: T) -> Self {
        let mut m = Self::zero(alg);
        m.coeffs[0] = x;
        m
    }

    pub fn one(alg: Algebra) -> Self {
        Self::scalar(alg, T::one())
    }

    /// `x` times the basis blade with the given mask.
    pub fn basis_blade(alg: Algebra, mask: usize, x: T) -> Result<Self> {
        if mask >= alg.size() {
            return Err(Error::IndexOutOfRange { index: mask, dim: alg.dim() });
        }
        let mut m = Self::zero(alg);
        m.coeffs[mask] = x;
        Ok(m)
    }

    /// The basis vector `e_{i+1}` (zero-based `i`).
    pub fn basis_vector(alg: Algebra, i: usize) -> Result<Self> {
        if i >= alg.dim() {
            return Err(Error::IndexOutOfRange { index: i, dim: alg.dim() });
        }
        Self::basis_blade(alg, 1 << i, T::one())
    }

    /// Grade-1 element with the given components.
    pub fn vector(alg: Algebra, v: &[T]) -> Result<Self> {
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch { left: alg.dim(), right: v.len() });
        }
        let mut m = Self::zero(alg);
        for (i, &x) in v.iter().enumerate() {
            m.coeffs[1 << i] = x;
        }
        Ok(m)
    }

    /// The unit pseudoscalar `e1 e2 ... en`.
    pub fn pseudoscalar(alg: Algebra) -> Self {
        let mut m = Self::zero(alg);
        m.coeffs[alg.pseudoscalar_mask()] = T::one();
        m
    }

    /// Geometric product of a list of vectors, `1` for an empty list.
    pub fn product_of_vectors(alg: Algebra, vectors: &[Vec<T>]) -> Result<Self> {
        let mut acc = Self::one(alg);
        for v in vectors {
            acc = acc.geometric_product(&Self::vector(alg, v)?)?;
        }
        Ok(acc)
    }

    // ===================================================================
    // Access
    // ===================================================================

    #[inline]
    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    #[inline]
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, mask: usize) -> T {
        self.coeffs.get(mask).copied().unwrap_or_else(T::zero)
    }

    #[inline]
    pub fn scalar_part(&self) -> T {
        self.coeffs[0]
    }

    /// Vector components, i.e. the grade-1 coefficients in index order.
    pub fn vector_part(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.coeffs[1 << i]).collect()
    }

    /// Nonzero terms as `(mask, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, *c))
    }

    pub fn map(&self, f: impl Fn(usize, T) -> T) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(m, &c)| f(m, c)).collect();
        Multivector { alg: self.alg, coeffs }
    }

    // ===================================================================
    // Grades
    // ===================================================================

    /// The grade-`k` component.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > self.dim() {
            return Err(Error::GradeOutOfRange { grade: k, dim: self.dim() });
        }
        Ok(self.grade(k))
    }

    /// The grade-`k` component; empty for `k > n`.
    pub fn grade(&self, k: usize) -> Self {
        self.map(|m, c| if grade_of(m) == k { c } else { T::zero() })
    }

    /// Sum of the components whose grade satisfies `keep`.
    pub fn grades_where(&self, keep: impl Fn(usize) -> bool) -> Self {
        self.map(|m, c| if keep(grade_of(m)) { c } else { T::zero() })
    }

    /// Norm of each grade component, indexed by grade.
    pub fn grade_norms(&self) -> Vec<T> {
        let mut sq = vec![T::zero(); self.dim() + 1];
        for (m, c) in self.coeffs.iter().enumerate() {
            sq[grade_of(m)] += *c * *c;
        }
        sq.into_iter().map(|x| x.sqrt()).collect()
    }

    /// Grades whose component norm exceeds `threshold`.
    pub fn grades_above(&self, threshold: T) -> Vec<usize> {
        self.grade_norms().into_iter().enumerate().filter(|(_, x)| *x > threshold).map(|(k, _)| k).collect()
    }

    /// The single grade carrying more than `eps * |self|`, if there is one.
    /// The zero multivector reports grade 0.
    pub fn homogeneous_grade(&self, eps: T) -> Option<usize> {
        let norm = self.norm();
        if norm.is_zero() {
            return Some(0);
        }
        let grades = self.grades_above(eps * norm);
        match grades.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    // ===================================================================
    // Involutions and norms
    // ===================================================================

    /// Reversion: grade `k` picks up `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        self.map(|m, c| if reverse_odd(grade_of(m)) { -c } else { c })
    }

    /// Grade involution: grade `k` picks up `(-1)^k`.
    pub fn grade_involution(&self) -> Self {
        self.map(|m, c| if grade_of(m) % 2 == 1 { -c } else { c })
    }

    pub fn norm_squared(&self) -> T {
        self.coeffs.iter().map(|c| *c * *c).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc.max(c.abs()))
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|_, c| c * s)
    }

    /// `|self - other| <= eps * max(|self|, |other|)`; two zeros compare equal.
    pub fn approx_eq(&self, other: &Self, eps: T) -> bool {
        if self.alg != other.alg {
            return false;
        }
        let scale = self.norm().max(other.norm());
        let diff = (self - other).norm();
        diff <= eps * scale
    }

    /// `|self| <= eps`.
    pub fn is_zero(&self, eps: T) -> bool {
        self.norm() <= eps
    }

    /// Componentwise distance `|self - other|`.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.alg.check_same(&other.alg)?;
        Ok((self - other).norm())
    }

    // ===================================================================
    // Products
    // ===================================================================

    /// Bilinear product over basis blades, keeping the pairs accepted by
    /// `keep(mask_a, mask_b)`.
    fn filtered(&self, other: &Self, keep: impl Fn(usize, usize) -> bool) -> Result<Self> {
        self.alg.check_same(&other.alg)?;
        let a: Vec<(usize, T)> = self.terms().collect();
        let b: Vec<(usize, T)> = other.terms().collect();
        let mut out = vec![T::zero(); self.alg.size()];
        for &(ma, ca) in &a {
            for &(mb, cb) in &b {
                if keep(ma, mb) {
                    let v = ca * cb;
                    if reorder_odd(ma, mb) {
                        out[ma ^ mb] -= v;
                    } else {
                        out[ma ^ mb] += v;
                    }
                }
            }
        }
        Ok(Multivector { alg: self.alg, coeffs: out })
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.filtered(other, |_, _| true)
    }

    /// `<AB>_0`.
    pub fn scalar_product(&self, other: &Self) -> Result<T> {
        self.alg.check_same(&other.alg)?;
        let mut acc = T::zero();
        for (m, c) in self.terms() {
            let d = other.coeffs[m];
            if !d.is_zero() {
                let v = c * d;
                acc += if reorder_odd(m, m) { -v } else { v };
            }
        }
        Ok(acc)
    }

    /// Left contraction: for grades `p`, `q` the `q - p` component, zero when
    /// `p > q`.
    pub fn left_contraction(&self, other: &Self) -> Result<Self> {
        self.filtered(other, |a, b| a & b == a)
    }

    /// Right contraction: the `p - q` component, zero when `q > p`.
    pub fn right_contraction(&self, other: &Self) -> Result<Self> {
        self.filtered(other, |a, b| a & b == b)
    }

    /// Fat dot: the `|q - p|` component.
    pub fn fat_dot(&self, other: &Self) -> Result<Self> {
        self.filtered(other, |a, b| a & b == a || a & b == b)
    }

    /// Hestenes inner product: the fat dot, except zero when either factor is
    /// a scalar.
    pub fn hestenes_inner(&self, other: &Self) -> Result<Self> {
        self.filtered(other, |a, b| a != 0 && b != 0 && (a & b == a || a & b == b))
    }

    /// Outer product: the `p + q` component.
    pub fn outer_product(&self, other: &Self) -> Result<Self> {
        self.filtered(other, |a, b| a & b == 0)
    }

    /// Grassmann contraction `reverse(A) ⌋ B`.
    pub fn grassmann_contraction(&self, other: &Self) -> Result<Self> {
        self.reverse().left_contraction(other)
    }

    /// Commutator product `(MN - NM) / 2`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let mn = self.geometric_product(other)?;
        let nm = other.geometric_product(self)?;
        Ok((&mn - &nm).scale(T::lit(0.5)))
    }

    /// Anticommutator product `(MN + NM) / 2`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        let mn = self.geometric_product(other)?;
        let nm = other.geometric_product(self)?;
        Ok((&mn + &nm).scale(T::lit(0.5)))
    }

    /// `self * self`.
    pub fn square(&self) -> Self {
        self * self
    }
}

// =======================================================================
// Operators
// =======================================================================

impl<T: Scalar> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        assert_eq!(self.alg, rhs.alg, "multivectors from different algebras");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| *a + *b).collect();
        Multivector { alg: self.alg, coeffs }
    }
}

impl<T: Scalar> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        assert_eq!(self.alg, rhs.alg, "multivectors from different algebras");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| *a - *b).collect();
        Multivector { alg: self.alg, coeffs }
    }
}

impl<T: Scalar> Add for Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        &self - &rhs
    }
}

impl<T: Scalar> AddAssign<&Multivector<T>> for Multivector<T> {
    fn add_assign(&mut self, rhs: &Multivector<T>) {
        assert_eq!(self.alg, rhs.alg, "multivectors from different algebras");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += *b;
        }
    }
}

impl<T: Scalar> SubAssign<&Multivector<T>> for Multivector<T> {
    fn sub_assign(&mut self, rhs: &Multivector<T>) {
        assert_eq!(self.alg, rhs.alg, "multivectors from different algebras");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= *b;
        }
    }
}

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.map(|_, c| -c)
    }
}

impl<T: Scalar> Neg for Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        -&self
    }
}

/// Geometric product. Panics when the algebras differ; use
/// [`Multivector::geometric_product`] for a checked version.
impl<T: Scalar> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        self.geometric_product(rhs).expect("multivectors from different algebras")
    }
}

impl<T: Scalar> Mul for Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Mul<T> for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: T) -> Multivector<T> {
        self.scale(rhs)
    }
}

impl<T: Scalar> Mul<T> for Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: T) -> Multivector<T> {
        self.scale(rhs)
    }
}

impl<T: Scalar> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if first {
                write!(f, "{c}")?;
            } else if c < T::zero() {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if m != 0 {
                write!(f, " {}", blade_label(m))?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
