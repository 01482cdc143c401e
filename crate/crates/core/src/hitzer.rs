//! Recovery of principal angles and planes from the geometric product of two
//! unit blades.
//!
//! For `p <= q` the product `reverse(A) B` has nonzero components exactly in
//! grades `p + q - 2D ..= p + q - 2d` (step 2), where `d` counts zero angles
//! and `D` is the last angle that is not right. The lowest component `L` is a
//! blade and the next one `S` satisfies `⟨S L⁻¹⟩₂ = Σ tan θ_i I_i`, which is
//! split into commuting planes through the eigenstructure of the
//! skew-symmetric map `x ↦ x ⌋ T`.

use crate::algebra::Algebra;
use crate::blade::{blade_inverse, certify_blade, nearest_blade, Blade};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, reject_from, scaled, symmetric_eigen, Matrix};
use crate::multivector::Multivector;
use crate::principal::wedge2;
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// Result of [`hitzer_recover`].
#[derive(Debug, Clone, PartialEq)]
pub struct HitzerRecovery<T> {
    /// Number of zero angles.
    pub d: usize,
    /// Index of the last angle that is not right (0 when all are).
    pub big_d: usize,
    /// All `p` angles, ascending.
    pub thetas: Vec<T>,
    /// Angles strictly between 0 and `π/2`, ascending, paired with
    /// [`HitzerRecovery::planes`].
    pub generic_thetas: Vec<T>,
    /// Unit planes `I_i` of the generic angles.
    pub planes: Vec<Multivector<T>>,
    /// `Σ tan θ_i I_i` as read off the product.
    pub tangent_bivector: Multivector<T>,
    /// Unit blade `I_{D+1} ... I_p B_⊥`: the factor shared by every
    /// component of the product.
    pub orthogonal_factor: Blade<T>,
}

impl<T: Scalar> HitzerRecovery<T> {
    /// `Σ θ_i I_i` over the generic angles.
    pub fn partial_angle_bivector(&self, alg: Algebra) -> Multivector<T> {
        let mut acc = Multivector::zero(alg);
        for (t, i) in self.generic_thetas.iter().zip(&self.planes) {
            acc += &i.scale(*t);
        }
        acc
    }
}

/// Reads the principal angles of `[A]` and `[B]` off `product = reverse(A) B`
/// for unit blades of grades `p <= q`.
///
/// Grade components below `eps_structural |product|` count as vanishing;
/// inputs with components near that threshold may misclassify `d` or `D`.
pub fn hitzer_recover<T: Scalar>(
    product: &Multivector<T>,
    p: usize,
    q: usize,
    tol: &Tolerance<T>,
) -> Result<HitzerRecovery<T>> {
    let alg = product.algebra();
    if p > q || q > alg.dim() {
        return Err(Error::ParameterOutOfRange(format!("grades ({p}, {q}) need p <= q <= n")));
    }
    let total = product.norm();
    if !(total > T::zero()) {
        return Err(Error::MalformedProduct("zero product".into()));
    }
    let threshold = tol.structural * total;
    let support: Vec<usize> = product.grades_above(threshold);
    let lo = *support.first().expect("nonzero product");
    let hi = *support.last().expect("nonzero product");
    let top = p + q;
    if hi > top || lo < q - p || support.iter().any(|g| !(top - g).is_multiple_of(2)) {
        return Err(Error::MalformedProduct(format!("grades {support:?} impossible for blades of grades {p} and {q}")));
    }
    if support.len() != (hi - lo) / 2 + 1 {
        return Err(Error::MalformedProduct(format!("grades {support:?} have gaps")));
    }
    let big_d = (top - lo) / 2;
    let d = (top - hi) / 2;

    let lowest = product.grade(lo);
    let l = match certify_blade(&lowest, tol) {
        Ok(b) => b,
        Err(_) => nearest_blade(&lowest, lo)?,
    };
    let orthogonal_factor = l.normalized()?;
    let half_pi = T::FRAC_PI_2();

    let mut generic_thetas = Vec::new();
    let mut planes = Vec::new();
    let mut tangent_bivector = Multivector::zero(alg);
    if big_d > d {
        let second = product.grade(lo + 2);
        tangent_bivector = second.geometric_product(&blade_inverse(&l)?)?.grade(2);
        let (ts, is) = split_bivector(&tangent_bivector, big_d - d)?;
        generic_thetas = ts;
        planes = is;
    }

    let mut thetas = vec![T::zero(); d];
    thetas.extend(generic_thetas.iter().copied());
    thetas.extend(std::iter::repeat_n(half_pi, p - big_d));
    thetas.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(HitzerRecovery { d, big_d, thetas, generic_thetas, planes, tangent_bivector, orthogonal_factor })
}

/// Splits `T = Σ λ_i I_i` into `count` orthogonal planes, returning
/// `(atan λ_i, I_i)` sorted by angle.
fn split_bivector<T: Scalar>(t: &Multivector<T>, count: usize) -> Result<(Vec<T>, Vec<Multivector<T>>)> {
    let alg = t.algebra();
    let n = alg.dim();
    let images: Vec<Vec<T>> = (0..n)
        .map(|k| {
            let ek = Multivector::basis_vector(alg, k).expect("index in range");
            ek.left_contraction(t).expect("same algebra").vector_part()
        })
        .collect();
    let apply = |x: &[T]| -> Vec<T> {
        let mut out = vec![T::zero(); n];
        for (xk, img) in x.iter().zip(&images) {
            for (o, v) in out.iter_mut().zip(img) {
                *o += *xk * *v;
            }
        }
        out
    };
    // ΩᵀΩ has eigenvalue λ_i² on each plane.
    let gram = Matrix::from_fn(n, n, |i, j| dot(&images[i], &images[j]));
    let (values, vectors) = symmetric_eigen(&gram);
    let mut used: Vec<Vec<T>> = Vec::new();
    let mut found: Vec<(T, Multivector<T>)> = Vec::new();
    for (value, vector) in values.iter().zip(&vectors) {
        if found.len() == count {
            break;
        }
        if !(*value > T::zero()) {
            break;
        }
        let mut u = vector.clone();
        reject_from(&mut u, &used);
        let r = norm(&u);
        if r < T::lit(0.5) {
            continue;
        }
        let u = scaled(T::one() / r, &u);
        let mut w = apply(&u);
        let lambda = norm(&w);
        reject_from(&mut w, &used);
        let v = scaled(T::one() / norm(&w), &w);
        found.push((lambda.atan(), wedge2(alg, &u, &v)));
        used.push(u);
        used.push(v);
    }
    if found.len() != count {
        return Err(Error::MalformedProduct(format!("expected {count} rotation planes, found {}", found.len())));
    }
    found.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    Ok(found.into_iter().unzip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn equal_blades_have_only_zero_angles() {
        let alg = Algebra::new(4).unwrap();
        let a = Blade::from_vectors(alg, &[vec![1.0, 2.0, 0.0, 0.0], vec![0.0, 1.0, 1.0, 0.0]], &tol())
            .unwrap()
            .normalized()
            .unwrap();
        let prod = a.multivector().reverse().geometric_product(a.multivector()).unwrap();
        let r = hitzer_recover(&prod, 2, 2, &tol()).unwrap();
        assert_eq!(r.d, 2);
        assert_eq!(r.thetas, vec![0.0, 0.0]);
    }

    #[test]
    fn orthogonal_blades_give_right_angles() {
        let alg = Algebra::new(4).unwrap();
        let a = Blade::from_vectors(alg, &[vec![1.0, 0.0, 0.0, 0.0]], &tol()).unwrap();
        let b = Blade::from_vectors(alg, &[vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0]], &tol()).unwrap();
        let prod = a.multivector().reverse().geometric_product(b.multivector()).unwrap();
        let r = hitzer_recover(&prod, 1, 2, &tol()).unwrap();
        assert_eq!((r.d, r.big_d), (0, 0));
        assert_abs_diff_eq!(r.thetas[0], std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn single_rotation_plane() {
        let alg = Algebra::new(3).unwrap();
        let a = Blade::from_vectors(alg, &[vec![1.0, 0.0, 0.0]], &tol()).unwrap();
        let b = Blade::from_vectors(alg, &[vec![0.6, 0.8, 0.0]], &tol()).unwrap();
        let prod = a.multivector().reverse().geometric_product(b.multivector()).unwrap();
        let r = hitzer_recover(&prod, 1, 1, &tol()).unwrap();
        assert_abs_diff_eq!(r.thetas[0], 0.8f64.atan2(0.6), epsilon = 1e-14);
        assert_abs_diff_eq!(r.planes[0].get(0b011), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn inconsistent_grades_are_rejected() {
        let alg = Algebra::new(3).unwrap();
        let m = &Multivector::scalar(alg, 1.0) + &Multivector::basis_vector(alg, 0).unwrap();
        assert!(matches!(hitzer_recover(&m, 1, 1, &tol()), Err(Error::MalformedProduct(_))));
    }
}
