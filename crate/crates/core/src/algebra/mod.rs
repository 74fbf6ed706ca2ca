//! Field arithmetic, monomials, polynomials, module vectors and matrices.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod vector;

pub use field::{FieldElem, PrimeField};
pub use matrix::{Echelon, MatrixF, MatrixPoly};
pub use monomial::Monomial;
pub use poly::{Poly, PolyRing};
pub use vector::{Term, Vector};
