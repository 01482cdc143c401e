//! Small dense linear algebra on coordinate vectors: Gram-Schmidt,
//! one-sided Jacobi SVD and a cyclic Jacobi symmetric eigensolver.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * *xi;
    }
}

pub fn scaled<T: Scalar>(alpha: T, x: &[T]) -> Vec<T> {
    x.iter().map(|v| alpha * *v).collect()
}

pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// Removes the components of `v` along each (orthonormal) vector of `basis`,
/// twice for stability.
pub fn reject_from<T: Scalar>(v: &mut [T], basis: &[Vec<T>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(v, q);
            axpy(-c, q, v);
        }
    }
}

/// Orthogonal projection of `v` onto the span of the orthonormal `basis`.
pub fn project_onto<T: Scalar>(v: &[T], basis: &[Vec<T>]) -> Vec<T> {
    let mut out = vec![T::zero(); v.len()];
    for q in basis {
        axpy(dot(v, q), q, &mut out);
    }
    out
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Returns the orthonormal vectors and the diagonal of the triangular factor,
/// so that `v1 ∧ ... ∧ vp = (prod r) q1 ∧ ... ∧ qp`. A vector whose residual
/// falls below `eps` times its own length (or is zero) is rank deficient.
pub fn orthonormalize<T: Scalar>(vectors: &[Vec<T>], eps: T) -> Result<(Vec<Vec<T>>, Vec<T>)> {
    let mut qs: Vec<Vec<T>> = Vec::with_capacity(vectors.len());
    let mut rs = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let original = norm(v);
        let mut w = v.clone();
        reject_from(&mut w, &qs);
        let r = norm(&w);
        if !(original > T::zero()) || !(r > eps * original) || !r.is_finite() {
            return Err(Error::RankDeficient { index });
        }
        qs.push(scaled(T::one() / r, &w));
        rs.push(r);
    }
    Ok((qs, rs))
}

/// Extends an orthonormal set to `target` vectors of `R^n` by orthogonalizing
/// canonical basis vectors in index order, keeping those whose residual is
/// at least one half.
pub fn complete_basis<T: Scalar>(basis: &[Vec<T>], n: usize, target: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = basis.to_vec();
    let half = T::lit(0.5);
    for i in 0..n {
        if out.len() >= target {
            break;
        }
        let mut w = unit(n, i);
        reject_from(&mut w, &out);
        let r = norm(&w);
        if r >= half {
            out.push(scaled(T::one() / r, &w));
        }
    }
    out
}

/// Largest deviation of the Gram matrix of `vectors` from the identity.
pub fn orthonormality_defect<T: Scalar>(vectors: &[Vec<T>]) -> T {
    let mut worst = T::zero();
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((dot(a, b) - target).abs());
        }
    }
    worst
}

// =======================================================================
// Dense matrices
// =======================================================================

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// `M_ij = a_i · b_j`.
    pub fn cross_gram(a: &[Vec<T>], b: &[Vec<T>]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| dot(&a[i], &b[j]))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum())
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|x| *x * *x).sum::<T>().sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

// =======================================================================
// SVD
// =======================================================================

const MAX_SWEEPS: usize = 80;

/// Full singular value decomposition `M = U diag(sigma) V^T` with square
/// orthogonal `U` (rows x rows) and `V` (cols x cols). `sigma` has
/// `min(rows, cols)` entries in descending order.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub u: Matrix<T>,
    pub sigma: Vec<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar> Svd<T> {
    /// `U diag(sigma) V^T`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let (r, c) = (self.u.rows(), self.v.rows());
        Matrix::from_fn(r, c, |i, j| {
            self.sigma.iter().enumerate().map(|(k, s)| self.u[(i, k)] * *s * self.v[(j, k)]).sum()
        })
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd<T: Scalar>(m: &Matrix<T>) -> Svd<T> {
    if m.rows() >= m.cols() {
        svd_tall(m)
    } else {
        let t = svd_tall(&m.transpose());
        Svd { u: t.v, sigma: t.sigma, v: t.u }
    }
}

fn svd_tall<T: Scalar>(m: &Matrix<T>) -> Svd<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<T>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<T>> = (0..cols).map(|j| unit(cols, j)).collect();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let alpha = dot(&a[i], &a[i]);
                let beta = dot(&a[j], &a[j]);
                let gamma = dot(&a[i], &a[j]);
                if gamma.is_zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, i, j, c, s);
                rotate(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<T> = a.iter().map(|col| norm(col)).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&x, &y| sigma[y].partial_cmp(&sigma[x]).unwrap_or(std::cmp::Ordering::Equal).then(x.cmp(&y)));
    let smax = order.first().map(|&k| sigma[k]).unwrap_or_else(T::zero);
    let tiny = T::lit(16.0) * eps * T::lit(rows.max(cols) as f64) * smax.max(T::one());

    let mut u_cols: Vec<Vec<T>> = Vec::with_capacity(rows);
    let mut v_cols: Vec<Vec<T>> = Vec::with_capacity(cols);
    let mut sorted_sigma = Vec::with_capacity(cols);
    let mut deferred = Vec::new();
    for &k in &order {
        v_cols.push(v[k].clone());
        if sigma[k] > tiny {
            let mut u = scaled(T::one() / sigma[k], &a[k]);
            reject_from(&mut u, &u_cols);
            let r = norm(&u);
            u_cols.push(scaled(T::one() / r, &u));
        } else {
            sigma[k] = T::zero();
            deferred.push(u_cols.len());
            u_cols.push(Vec::new());
        }
        sorted_sigma.push(sigma[k]);
    }
    // Fill columns belonging to vanishing singular values, then extend to a
    // square orthogonal matrix.
    for slot in deferred {
        let known: Vec<Vec<T>> = u_cols.iter().filter(|c| !c.is_empty()).cloned().collect();
        let extra = complete_basis(&known, rows, known.len() + 1);
        u_cols[slot] = extra.last().cloned().expect("completion within dimension");
    }
    let u_cols = complete_basis(&u_cols, rows, rows);

    Svd {
        u: Matrix::from_fn(rows, rows, |i, j| u_cols[j][i]),
        sigma: sorted_sigma,
        v: Matrix::from_fn(cols, cols, |i, j| v_cols[j][i]),
    }
}

#[allow(clippy::needless_range_loop)]
fn rotate<T: Scalar>(cols: &mut [Vec<T>], i: usize, j: usize, c: T, s: T) {
    let n = cols[i].len();
    for k in 0..n {
        let x = cols[i][k];
        let y = cols[j][k];
        cols[i][k] = c * x - s * y;
        cols[j][k] = s * x + c * y;
    }
}

// =======================================================================
// Symmetric eigenproblem
// =======================================================================

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order with the matching unit
/// eigenvectors.
pub fn symmetric_eigen<T: Scalar>(m: &Matrix<T>) -> (Vec<T>, Vec<Vec<T>>) {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a = m.clone();
    let mut v = Matrix::<T>::identity(n);
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() <= eps * a.frobenius() || off.is_zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.is_zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (T::one() + theta * theta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].partial_cmp(&a[(x, x)]).unwrap_or(std::cmp::Ordering::Equal).then(x.cmp(&y)));
    let values = order.iter().map(|&k| a[(k, k)]).collect();
    let vectors = order.iter().map(|&k| v.column(k)).collect();
    (values, vectors)
}
