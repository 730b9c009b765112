//! Exact multivariate polynomials and rational functions over the
//! rationals in the root variables `a_i`, the parameter `h` and the Novikov
//! variables `q_i`.

mod gcd;
mod linfrac;
mod monomial;
mod parse;
mod poly;
mod ratfunc;

use num_bigint::BigInt;

pub use gcd::{gcd, gcd_all};
pub use linfrac::LinFrac;
pub use monomial::{Monomial, Var, MAX_DEGREE, MAX_RANK, NUM_VARS};
pub use parse::{parse_ratfunc, parse_var};
pub use poly::Poly;
pub use ratfunc::{poly_product, product, RatFunc};

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
