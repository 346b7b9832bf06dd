//! Example families of twisting maps with their stated acceptance predicates.
//!
//! Constructors always build a candidate; verification is a separate call so
//! that ill-formed inputs can be exercised as negative controls.

pub mod algebras;
mod duplicates;
mod kn;
mod maps;
mod quiver;
mod truncated;

pub use duplicates::{make_ncd, make_quantum_duplicate, NcdConditions, QuantumConditions};
pub use kn::{make_kn, KnConditions};
pub use maps::{is_multiplicative, is_twisted_derivation, is_unital};
pub use quiver::{quiver_of, Admissibility, Quiver, QuiverRep};
pub use truncated::{make_truncated, truncated_grid_from_generators, TruncatedConditions};
