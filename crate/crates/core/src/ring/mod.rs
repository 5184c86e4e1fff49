//! Exact rational coefficients, named variables and sparse multivariate
//! polynomials. Everything else in the crate is built on these types.

mod linalg;
mod poly;
mod var;

pub use linalg::{nullspace, rank, rref, Rref};
pub use poly::{rank_of_span, Monomial, Poly};
pub use var::{VarId, VarKind};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}
