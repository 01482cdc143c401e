//! Exponential and hyperbolic functions of multivectors by power series.

use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 200;

#[derive(Clone, Copy)]
enum Parity {
    All,
    Even,
    Odd,
}

/// Sums `M^k / k!` over the selected powers. Stops once a term's norm drops
/// below `eps_identity * max(1, |partial sum|)`.
fn power_series<T: Scalar>(m: &Multivector<T>, parity: Parity, tol: &Tolerance<T>) -> Result<Multivector<T>> {
    let alg = m.algebra();
    let mut sum = Multivector::zero(alg);
    let mut term = Multivector::one(alg);
    for k in 0..MAX_SERIES_TERMS {
        if k > 0 {
            term = (&term * m).scale(T::one() / T::lit(k as f64));
        }
        let included = match parity {
            Parity::All => true,
            Parity::Even => k % 2 == 0,
            Parity::Odd => k % 2 == 1,
        };
        if !included {
            continue;
        }
        sum += &term;
        let tn = term.norm();
        if !tn.is_finite() {
            return Err(Error::Nonconvergence { terms: k + 1 });
        }
        if k > 0 && tn < tol.identity * T::one().max(sum.norm()) {
            return Ok(sum);
        }
        if k == 0 && m.norm().is_zero() {
            return Ok(sum);
        }
    }
    Err(Error::Nonconvergence { terms: MAX_SERIES_TERMS })
}

impl<T: Scalar> Multivector<T> {
    pub fn exp(&self, tol: &Tolerance<T>) -> Result<Self> {
        power_series(self, Parity::All, tol)
    }

    pub fn cosh(&self, tol: &Tolerance<T>) -> Result<Self> {
        power_series(self, Parity::Even, tol)
    }

    pub fn sinh(&self, tol: &Tolerance<T>) -> Result<Self> {
        power_series(self, Parity::Odd, tol)
    }
}
