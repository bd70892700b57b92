//! Exact linear algebra and univariate polynomials over a prime field.

mod field;
mod matrix;
mod poly;
mod subspace;

pub use field::{binomial_mod, is_prime, FieldSpec};
pub use matrix::{FpMatrix, Rref};
pub use poly::{factor_poly, min_poly, FpPoly};
pub use subspace::{complement_indices, is_stable, restrict, QuotientMap};

pub(crate) use field::{inv, neg, reduce};
