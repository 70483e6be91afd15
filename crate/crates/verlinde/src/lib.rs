//! Computer-algebra kernel for the semisimplification of the category of
//! modular cyclic-group representations.
//!
//! The category is modeled concretely: objects are isotypic multiplicity
//! vectors over the simples L_1..L_{p−1}, morphisms are equivariant matrices
//! between canonical Jordan-block representatives, and equality of morphisms
//! is equality modulo the tensor ideal of negligibles (trace-pairing
//! radical). On top of the tensor structure the crate builds symmetric and
//! exterior powers, general-linear and special-linear Lie algebras, universal
//! envelopes with PBW certificates, Hopf algebras with full axiom
//! verification, coradical filtrations, coHochschild cohomology, smash
//! products, Kostant-style decompositions, Harish-Chandra round trips, and
//! point counts of general-linear group schemes over finite commutative
//! algebra objects.

pub mod commalg;
pub mod cyclic;
pub mod fp;
pub mod gl;
pub mod hc;
pub mod hopf;
pub mod json;
pub mod lie;
pub mod report;
pub mod ver;

pub use fp::{FpError, FpMatrix};
pub use ver::{VerError, VerMorphism, VerObject};
