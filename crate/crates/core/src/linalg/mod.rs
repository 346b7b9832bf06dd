//! Exact linear algebra over `Q` and `F_p`, plus matrices with entries in an
//! algebra `A` or in `End_K(A)`.

mod algmatrix;
mod field;
mod matrix;

pub use algmatrix::AlgMatrix;
pub use field::{Field, Scalar, MAX_PRIME};
pub use matrix::{EndoMatrix, KMatrix, LinearEndo};
