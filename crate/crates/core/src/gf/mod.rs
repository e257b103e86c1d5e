//! Finite fields `GF(p^e)` with at most 256 elements, dense matrices and
//! univariate polynomials over them.

mod field;
mod matrix;
mod poly;

pub use field::{Elem, Field, FieldSpec};
pub(crate) use field::gcd;
pub use matrix::{Echelon, FqMatrix, SpanBasis};
pub use poly::{min_poly, Poly};
