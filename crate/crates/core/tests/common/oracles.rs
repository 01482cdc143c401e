//! Reference implementations that share no code with the library.

use std::f64::consts::PI;

/// A basis blade as an ascending list of vector indices.
type Word = Vec<usize>;

/// Product of two basis blades by sorting the concatenated word with
/// adjacent swaps and cancelling equal neighbours (`e_i e_i = 1`).
pub fn basis_product(a: &[usize], b: &[usize]) -> (f64, Word) {
    let mut w: Word = a.iter().chain(b).copied().collect();
    let mut sign = 1.0;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if w[i] == w[i + 1] {
                w.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return (sign, w);
        }
    }
}

fn word_of(mask: usize) -> Word {
    (0..usize::BITS as usize).filter(|i| mask & (1 << i) != 0).collect()
}

fn mask_of(w: &[usize]) -> usize {
    w.iter().fold(0, |m, i| m | (1 << i))
}

/// Dense product over `2^n` coefficients, optionally keeping only pairs of
/// grades `(r, s)` and result grades selected by `keep(r, s, k)`.
pub fn product(a: &[f64], b: &[f64], keep: impl Fn(usize, usize, usize) -> bool) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0.0 {
                continue;
            }
            let (s, w) = basis_product(&word_of(i), &word_of(j));
            if keep(i.count_ones() as usize, j.count_ones() as usize, w.len()) {
                out[mask_of(&w)] += s * x * y;
            }
        }
    }
    out
}

pub fn geometric(a: &[f64], b: &[f64]) -> Vec<f64> {
    product(a, b, |_, _, _| true)
}

pub fn outer(a: &[f64], b: &[f64]) -> Vec<f64> {
    product(a, b, |r, s, k| k == r + s)
}

pub fn left_contraction(a: &[f64], b: &[f64]) -> Vec<f64> {
    product(a, b, |r, s, k| s >= r && k == s - r)
}

/// Real roots of `x^2 + b x + c` with nonnegative discriminant.
pub fn quadratic(b: f64, c: f64) -> [f64; 2] {
    let disc = (b * b - 4.0 * c).max(0.0).sqrt();
    // Stable pair: the larger-magnitude root first, the other from the product.
    let q = -0.5 * (b + b.signum() * disc);
    if q == 0.0 {
        return [0.0, 0.0];
    }
    [q, c / q]
}

/// Real roots of `x^3 + a x^2 + b x + c` when all three are real, by the
/// trigonometric form of Cardano's formula.
pub fn cubic(a: f64, b: f64, c: f64) -> [f64; 3] {
    let q = (a * a - 3.0 * b) / 9.0;
    let r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    if q <= 0.0 {
        // Triple root.
        let x = -a / 3.0;
        return [x, x, x];
    }
    let sq = q.sqrt();
    let t = (r / (sq * sq * sq)).clamp(-1.0, 1.0).acos();
    let shift = a / 3.0;
    [
        -2.0 * sq * (t / 3.0).cos() - shift,
        -2.0 * sq * ((t + 2.0 * PI) / 3.0).cos() - shift,
        -2.0 * sq * ((t - 2.0 * PI) / 3.0).cos() - shift,
    ]
}

/// Eigenvalues, descending, of `MᵀM` for a `p × q` matrix `m` with
/// `q <= 3`, as roots of its characteristic polynomial.
pub fn gram_eigenvalues_closed_form(m: &[Vec<f64>]) -> Vec<f64> {
    let q = m.first().map_or(0, |r| r.len());
    let g: Vec<Vec<f64>> =
        (0..q).map(|i| (0..q).map(|j| m.iter().map(|row| row[i] * row[j]).sum()).collect()).collect();
    let mut roots: Vec<f64> = match q {
        0 => vec![],
        1 => vec![g[0][0]],
        2 => {
            let tr = g[0][0] + g[1][1];
            let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
            quadratic(-tr, det).to_vec()
        }
        3 => {
            let tr = g[0][0] + g[1][1] + g[2][2];
            let minors = g[0][0] * g[1][1] - g[0][1] * g[1][0] + g[0][0] * g[2][2] - g[0][2] * g[2][0]
                + g[1][1] * g[2][2]
                - g[1][2] * g[2][1];
            let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
                - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
                + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
            cubic(-tr, minors, -det).to_vec()
        }
        _ => panic!("closed form only up to 3 x 3"),
    };
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}
