//! Exact computer algebra for Jordan pairs and 3-graded Lie algebras.
//!
//! The crate builds finite-dimensional Lie algebras and Jordan pairs from
//! structure constants over exact fields, and implements the
//! Tits-Kantor-Koecher construction, ideal correspondences, centroids and
//! central closures, graded polynomial identities and the McCrimmon and
//! Kostrikin radicals.

pub mod error;
pub mod exactmath;
pub mod algebra;
pub mod par;
pub mod jordan;
pub mod sign;
pub mod simple;
pub mod tkk;
pub mod freelie;
pub mod pi;
pub mod centroid;
pub mod radical;
pub mod io;

pub use error::{Error, Result};
pub use exactmath::{FieldSpec, Matrix, Scalar, Subspace};
pub use par::Exec;
