//! Exact computer algebra for the local membership problem of the coordinate
//! vector `y = (y1, ..., yn)` in subspaces of vectors of linear forms, and
//! its transport to subspaces of `n x n` matrices through the trace form.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactalg`]: exact fields (rationals, prime fields) and sparse
//!   multivariate polynomials with gcd/lcm and reduced rational functions.
//! - [`polymat`]: determinants, minors, ranks and linear solving over the
//!   polynomial ring, its fraction field and the base field.
//! - [`groebner`]: Buchberger's algorithm, normal forms, ideal and radical
//!   membership.
//! - [`localmem`]: the decision procedures on subspaces of `(S_1)^n`.
//! - [`matspace`]: the matrix side: flat correspondence, trace pairing,
//!   orthogonal complements and rank-1 idempotent search.

pub mod error;
pub mod exactalg;
pub mod groebner;
pub mod localmem;
pub mod matspace;
pub mod polymat;

pub use error::{Error, Result};
pub use exactalg::{Field, FieldScalar, Monomial, Polynomial, RationalFunction};
