//! Numerical toolkit for Renyi-alpha entanglement of qubit systems.
//!
//! The crate computes entanglement measures for states of up to a few
//! qubits (concurrence, Renyi-alpha entanglement, assistance duals),
//! checks monogamy and polygamy inequalities on Haar-random states, and
//! locates the alpha thresholds where convexity of the bridge function
//! `f_alpha` and the sign of the superadditivity defect `h_alpha` flip.
//! All matrices are tiny and dense; every operation is a pure function
//! of its inputs and an explicit seed.

#![forbid(unsafe_code)]

pub mod concurrence;
pub mod entropy;
mod error;
pub mod inequalities;
pub mod linalg;
pub mod renyi_ent;
pub mod roof;
pub mod states;
pub mod sweeps;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, PureState};

/// Crate version stamped into every report row.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
