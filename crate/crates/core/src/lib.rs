//! Exact computation of the Galois invariants of arithmetic Fuchsian groups
//! from quaternion algebra data over abelian number fields.
//!
//! Layers, bottom up:
//! - [`cyclo`]: cyclotomic arithmetic, abelian subfields, certified real signs;
//! - [`places`]: splitting of primes, local rings, square tests, Hilbert symbols;
//! - [`quat`]: quaternion algebras, matrix models, orders;
//! - [`invariants`]: ramification, the Fuchsian condition, embedding tests, periods;
//! - [`galois`]: conjugation of invariant data;
//! - [`families`]: the Γ_p family and the (2,3,7) algebra over Q(ζ_7)^+;
//! - [`expr`] and [`report`]: the element language and the reports behind the CLI.

pub mod cyclo;
pub mod error;
pub mod linalg;
pub mod places;
pub mod quat;
pub mod invariants;
pub mod galois;
pub mod families;
pub mod expr;
pub mod report;

pub use error::{Error, Result};
