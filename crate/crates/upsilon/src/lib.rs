//! Exact invariants of singular and tied links.
//!
//! The crate computes the two-parameter invariants `Upsilon_{x,y,z}` and
//! `Upsilon'_{x,y}` of singular links, their extensions to links with tied
//! components, and the graded trace of the singular extension of the
//! underlying algebra of braids and ties, all over an exact symbolic
//! coefficient field.
//!
//! Everything is immutable and deterministic: values are canonical on
//! construction, so equal inputs render to identical text across runs.

pub mod algebra;
pub mod braid;
pub mod checks;
pub mod error;
pub mod expr;
pub mod graded;
pub mod invariant;
pub mod partition;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod trace;

pub use algebra::{AlgebraElement, BasisKey, Gen};
pub use braid::{GenTok, TokKind, Word};
pub use error::{Error, Result};
pub use graded::{GradedTok, GradedWord};
pub use invariant::{InvariantMode, Specialization};
pub use partition::{Permutation, SetPartition};
pub use poly::{Monomial, Polynomial, Var};
pub use ratfun::RationalFunction;
pub use scalar::Scalar;
