//! Seeded random inputs: Gaussian frames, blades with log-uniform norms,
//! pairs with prescribed principal angles and homogeneous multivectors.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::Algebra;
use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::linalg::{complete_basis, orthonormalize};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// Smallest and largest norm of generated blades.
pub const NORM_RANGE: (f64, f64) = (0.1, 10.0);

/// Generator for trial `stream` of a run seeded by `seed`. Streams are
/// independent, so trials can run in any order.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_vector<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<T> {
    (0..n).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect()
}

/// Orthonormalized Gaussian `n × p` matrix, as `p` column vectors.
pub fn random_frame<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, p: usize) -> Vec<Vec<T>> {
    loop {
        let vs: Vec<Vec<T>> = (0..p).map(|_| gaussian_vector(rng, n)).collect();
        if let Ok((qs, _)) = orthonormalize(&vs, T::lit(1e-6)) {
            return qs;
        }
    }
}

/// Log-uniform sample in [`NORM_RANGE`].
pub fn log_uniform_norm<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    let (lo, hi) = NORM_RANGE;
    T::lit((rng.gen_range(lo.ln()..=hi.ln())).exp())
}

/// Random `p`-blade: Gaussian factors rescaled to a log-uniform norm.
pub fn random_blade<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    alg: Algebra,
    p: usize,
    tol: &Tolerance<T>,
) -> Result<Blade<T>> {
    if p > alg.dim() {
        return Err(Error::GradeOutOfRange { grade: p, dim: alg.dim() });
    }
    let target = log_uniform_norm::<T, _>(rng);
    if p == 0 {
        return Ok(Blade::scalar(alg, target));
    }
    loop {
        let vs: Vec<Vec<T>> = (0..p).map(|_| gaussian_vector(rng, alg.dim())).collect();
        match Blade::from_vectors(alg, &vs, tol) {
            Ok(b) => return Ok(b.scaled(target / b.norm())),
            Err(Error::RankDeficient { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A pair of blades of grades `p` and `q` in `R^n` whose principal angles
/// are exactly `thetas` (length `min(p, q)`), in a random orientation of
/// space, with random signs and log-uniform norms. Needs `n >= p + q`
/// unless every angle is zero.
pub fn pair_with_angles<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    alg: Algebra,
    p: usize,
    q: usize,
    thetas: &[T],
    tol: &Tolerance<T>,
) -> Result<(Blade<T>, Blade<T>)> {
    let n = alg.dim();
    let m = p.min(q);
    if thetas.len() != m {
        return Err(Error::ParameterOutOfRange(format!("expected {m} angles, got {}", thetas.len())));
    }
    let needed = p + q - thetas.iter().filter(|t| t.is_zero()).count();
    if needed > n {
        return Err(Error::ParameterOutOfRange(format!("{needed} directions do not fit in dimension {n}")));
    }
    let basis = random_frame::<T, _>(rng, n, n);
    let mut next = 0;
    let mut take = || {
        next += 1;
        basis[next - 1].clone()
    };
    let mut e = Vec::with_capacity(p);
    let mut f = Vec::with_capacity(q);
    for &t in thetas {
        let u = take();
        if t.is_zero() {
            f.push(u.clone());
        } else {
            let g = take();
            f.push(u.iter().zip(&g).map(|(a, b)| t.cos() * *a + t.sin() * *b).collect());
        }
        e.push(u);
    }
    for _ in m..p {
        e.push(take());
    }
    for _ in m..q {
        f.push(take());
    }
    let sign = |rng: &mut R| if rng.gen_bool(0.5) { T::one() } else { -T::one() };
    let a = Blade::from_vectors(alg, &e, tol)?;
    let b = Blade::from_vectors(alg, &f, tol)?;
    let (sa, sb) = (sign(rng), sign(rng));
    let (na, nb) = (log_uniform_norm::<T, _>(rng), log_uniform_norm::<T, _>(rng));
    Ok((a.scaled(sa * na / a.norm()), b.scaled(sb * nb / b.norm())))
}

/// `count` distinct angles drawn uniformly from `[lo, hi]`, ascending, at
/// least `gap` apart.
pub fn distinct_angles<T: Scalar, R: Rng + ?Sized>(rng: &mut R, count: usize, lo: f64, hi: f64, gap: f64) -> Vec<T> {
    loop {
        let mut xs: Vec<f64> = (0..count).map(|_| rng.gen_range(lo..=hi)).collect();
        xs.sort_by(f64::total_cmp);
        if xs.windows(2).all(|w| w[1] - w[0] >= gap) {
            return xs.into_iter().map(T::lit).collect();
        }
    }
}

/// Angles mixing exact zeros, exact right angles and generic values, for
/// exercising degenerate configurations.
pub fn structured_angles<T: Scalar, R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<T> {
    let mut xs: Vec<f64> = (0..count)
        .map(|_| match rng.gen_range(0..3) {
            0 => 0.0,
            1 => std::f64::consts::FRAC_PI_2,
            _ => rng.gen_range(0.05..=std::f64::consts::FRAC_PI_2 - 0.05),
        })
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.into_iter().map(T::lit).collect()
}

/// Random homogeneous multivector of grade `k` with norm uniform in
/// `(0, max_norm]`.
pub fn random_homogeneous<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    alg: Algebra,
    k: usize,
    max_norm: f64,
) -> Result<Multivector<T>> {
    if k > alg.dim() {
        return Err(Error::GradeOutOfRange { grade: k, dim: alg.dim() });
    }
    let mut coeffs = vec![T::zero(); alg.size()];
    for mask in alg.masks_of_grade(k) {
        coeffs[mask] = T::lit(rng.sample::<f64, _>(StandardNormal));
    }
    let h = Multivector::new(alg, coeffs)?;
    let target = T::lit(max_norm * (1.0 - rng.gen::<f64>()));
    Ok(h.scale(target / h.norm()))
}

/// Orthonormal basis of the orthogonal complement of an orthonormal set.
pub fn complement_frame<T: Scalar>(frame: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    complete_basis(frame, n, n)[frame.len()..].to_vec()
}
