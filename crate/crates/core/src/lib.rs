pub mod algebra;
pub mod basischange;
pub mod catalog;
pub mod error;
pub mod extension;
pub mod json;
pub mod linalg;
pub mod report;
pub mod search;
pub mod symbolic;
pub mod twisting;

pub use algebra::{AlgElement, FiniteDimAlgebra};
pub use error::{Error, Result};
pub use linalg::{AlgMatrix, EndoMatrix, Field, KMatrix, LinearEndo, Scalar};
pub use report::{Failure, VerificationReport};
pub use twisting::{GammaFamily, TwistedTensorAlgebra, TwistingCandidate};
