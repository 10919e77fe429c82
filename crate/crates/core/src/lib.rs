//! Exact computation with measures on finite bounded lattices.
//!
//! Given a finite bounded lattice X, this crate computes the measurability
//! n(X) by three independent routes (spectrum point enumeration, Boolean
//! Gröbner bases over GF(2), exact rational nullspace of the
//! inclusion-exclusion constraint system) and materializes the structural
//! maps attached to the ring of measures: the universal measure, the
//! Boolean hull, orthogonal idempotents and invariant-measure spaces.

pub mod boolpoly;
pub mod catalog;
pub mod error;
pub mod hull;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod measures;
pub mod spectrum;

pub use error::{Error, Result};
pub use num;
pub use lattice::{are_isomorphic, FiniteLattice, LatticeMorphism};
