//! Combinatorial model of two-row Springer varieties X_{n-k,k}.

pub mod action;
pub mod cells;
pub mod checks;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod matching;
pub mod perm;
pub mod specht;
pub mod skein;
pub mod sphere;
pub mod tableau;

pub use error::{Arc, Error, Result};
pub use matching::{DottedMatching, Matching};
pub use perm::Perm;
pub use tableau::StandardTableau;
