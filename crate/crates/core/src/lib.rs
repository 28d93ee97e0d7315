//! Mod-2 cohomology of real Grassmann manifolds `G_k(R^n)`.
//!
//! The crate computes in `H*(G_k(R^n); Z/2)` presented as a graded quotient
//! of `Z/2[w1, …, wk]`, certifies non-vanishing of classes through the flag
//! manifold, searches for long non-trivial products of zero-divisors in
//! `H*(X × X)`, and assembles the resulting lower and upper bounds for
//! Lusternik-Schnirelmann category and topological complexity.

pub mod bits;
pub mod bounds;
pub mod cache;
pub mod cells;
pub mod error;
pub mod flag;
pub mod poly;
pub mod ring;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, VarSpace};
pub use ring::{GrassmannRing, NormalForm, RingLimits};
