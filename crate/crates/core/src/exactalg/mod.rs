//! Exact field arithmetic and sparse multivariate polynomials.

mod field;
mod gcd;
mod poly;
mod ratfun;

pub use field::{Field, FieldScalar};
pub use gcd::{poly_gcd, poly_lcm};
pub use poly::{Monomial, PolyDisplay, Polynomial};
pub use ratfun::{reduce_fraction, RationalFunction};

pub(crate) use poly::grevlex_cmp;
