//! Exact sparse multivariate polynomial arithmetic over the rationals.

mod gcd;
mod poly;
mod squarefree;

/// Arbitrary-precision rational coefficient, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

pub use gcd::{gcd, gcd_list};
pub use poly::{Monomial, Polynomial};
pub use squarefree::{is_squarefree, squarefree_decomposition, Factorization};

use crate::error::Result;

/// Exact divisibility test: `Some(q)` with `p = d * q`, or `None`.
pub fn divides(d: &Polynomial, p: &Polynomial) -> Result<Option<Polynomial>> {
    p.div_exact(d)
}
