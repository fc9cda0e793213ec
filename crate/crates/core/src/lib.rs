//! Invariant quantization of linear fields.
//!
//! * [`ccr`]: free algebra of creation/annihilation letters, normal ordering,
//!   conjugation, grading and time reversal.
//! * [`fock`]: invariant quantizations, ket/bra spaces, scalar products, Gram
//!   matrices and their exact inertia.
//! * [`gupta_bleuler`]: the photon physical-state constraint, constrained and
//!   gauge tensor bases, positivity of the constrained scalar product.
//! * [`little_group`]: the stabilizer of a light-like vector, its isomorphism
//!   with E(2), spiral basis and invariant-subspace witnesses.
//! * [`classical`]: mode-truncated symplectic forms, Poisson brackets,
//!   generators, energy-momentum and radiated fields.

#![allow(clippy::needless_range_loop)]

pub mod ccr;
pub mod classical;
pub mod error;
pub mod fock;
pub mod gupta_bleuler;
pub mod linalg;
pub mod little_group;
pub mod metric;
pub mod scalar;

pub use ccr::{CommutatorTable, Kind, Letter, LetterMap, Normalizer, Phrase, Word};
pub use error::{Error, Result};
pub use linalg::{ExactMatrix, Inertia};
pub use scalar::{ComplexScalar, Rational};
