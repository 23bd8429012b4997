//! Heegaard-Floer concordance invariants of links in the 3-sphere, computed
//! combinatorially from grid diagrams.
//!
//! The pipeline runs
//! [`grid::GridDiagram`] → [`chain::FilteredComplex`] →
//! [`algebra::filtered_reduce`] → [`invariants::InvariantReport`],
//! with [`braid`] providing braid and quasipositive inputs together with the
//! diagrammatic quantities (signature, Legendrian data, surface Euler
//! characteristics) the invariants are checked against.

pub mod algebra;
pub mod braid;
pub mod chain;
pub mod cli;
pub mod error;
pub mod grading;
pub mod grid;
pub mod invariants;
pub mod verify;

pub use error::{Error, Result};
pub use grading::HalfInt;
