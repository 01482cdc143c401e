//! Clifford algebra of Euclidean space and basis-blade bookkeeping.
//!
//! Basis blades are addressed by bitmask: bit `i` set means the basis vector
//! `e_{i+1}` is a factor, factors in increasing index order.

use crate::error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 14;

/// The Clifford algebra of `R^n` with the Euclidean inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Algebra {
    n: usize,
}

impl Algebra {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Algebra { n })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of basis blades, `2^n`.
    #[inline]
    pub fn size(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn pseudoscalar_mask(&self) -> usize {
        self.size() - 1
    }

    pub(crate) fn check_same(&self, other: &Algebra) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// Masks of all basis blades of grade `k`, ascending.
    pub fn masks_of_grade(&self, k: usize) -> impl Iterator<Item = usize> {
        (0..self.size()).filter(move |m| grade_of(*m) == k)
    }
}

#[inline]
pub fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Sign of the product of basis blades `a` and `b`, from the number of
/// transpositions needed to bring the factors into canonical order.
#[inline]
pub fn reorder_sign(a: usize, b: usize) -> f64 {
    if reorder_odd(a, b) {
        -1.0
    } else {
        1.0
    }
}

#[inline]
pub(crate) fn reorder_odd(a: usize, b: usize) -> bool {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    swaps & 1 == 1
}

/// `(-1)^{k(k-1)/2}`, the reversion sign at grade `k`.
#[inline]
pub fn reverse_sign(k: usize) -> f64 {
    if reverse_odd(k) {
        -1.0
    } else {
        1.0
    }
}

#[inline]
pub(crate) fn reverse_odd(k: usize) -> bool {
    (k / 2) % 2 == 1
}

/// Human label of a basis blade, e.g. `e1e3` or `1` for the scalar.
pub fn blade_label(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut s = String::new();
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        if m & 1 == 1 {
            s.push('e');
            s.push_str(&(i + 1).to_string());
        }
        m >>= 1;
        i += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_bounds() {
        assert!(Algebra::new(0).is_err());
        assert!(Algebra::new(15).is_err());
        assert_eq!(Algebra::new(14).unwrap().size(), 16384);
    }

    #[test]
    fn reorder_signs() {
        // e2 e1 = -e1 e2
        assert_eq!(reorder_sign(0b10, 0b01), -1.0);
        assert_eq!(reorder_sign(0b01, 0b10), 1.0);
        // e12 e12 = -1
        assert_eq!(reorder_sign(0b11, 0b11), -1.0);
        // e123 e123 = -1
        assert_eq!(reorder_sign(0b111, 0b111), -1.0);
    }

    #[test]
    fn reverse_signs() {
        let expect = [1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(reverse_sign(k), *e);
        }
    }

    #[test]
    fn labels() {
        assert_eq!(blade_label(0), "1");
        assert_eq!(blade_label(0b101), "e1e3");
        assert_eq!(blade_label(1 << 10), "e11");
    }
}
