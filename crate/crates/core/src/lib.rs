//! Exact computational algebra for smooth hypersurfaces: Jacobian rings and
//! their Gorenstein pairing, graded matrix factorizations with the
//! stabilized diagonal, and integer lattices with discriminant forms.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command line live in the `jacfact` crate.

#![no_std]

extern crate alloc;

pub mod budget;
pub mod field;
pub mod jacobian;
pub mod lattice;
pub mod linalg;
pub mod mf;
pub mod poly;

pub use budget::{Budget, ResourceExceeded};
pub use field::{Field, FieldConfig, PrimeField, Rationals};
pub use poly::{Monomial, Polynomial};
