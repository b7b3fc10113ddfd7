//! Exact arithmetic: fields, univariate polynomials and linear algebra.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{parse_field, FieldKind, FieldSpec, Scalar};
pub use matrix::{Coordinates, Echelon, Matrix, Subspace, Vector};
