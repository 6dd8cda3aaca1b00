//! Exact cohomology of the ℕ-graded Lie algebras of maximal class.
//!
//! The crate computes scalar and adjoint Chevalley–Eilenberg cohomology of
//! `𝔪₀` and `𝔪₂` (with `L₁` and the finite quotients `𝔪₀(n)`, `𝔪₂(n)` as
//! cross-checks), builds the explicit cocycle families spanning it, and
//! checks them against brute-force linear algebra on homogeneous blocks.
//!
//! All arithmetic is exact over ℚ.

pub mod algebra;
pub mod census;
pub mod cochain;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod operators;
pub mod rational;

pub use algebra::{AlgebraKind, AlgebraSpec, Bracket};
pub use cochain::{AdjointCochain, BlockSpec, Cochain, Mode};
pub use error::{Error, Result};
pub use exterior::{Monomial, ScalarForm};
pub use operators::{CocycleLabel, Family};
pub use rational::Q;
