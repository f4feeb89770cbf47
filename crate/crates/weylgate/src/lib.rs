//! Algebraic toolkit for universal quantum gate sets.
//!
//! The crate builds the standard Clifford-algebra generator families for
//! qubit registers and their Weyl-pair generalization for qudits, verifies
//! the defining relations of both families numerically, decides whether a
//! gate set is universal by computing the Lie algebra its generators close
//! under commutators, compiles arbitrary unitaries into finite products of
//! the universal gates, and simulates a deterministic three-bus quantum
//! processor driven by a small `repeat`-loop program DSL.
//!
//! Modules:
//! - [`matrix`] — dense complex matrices, Kronecker products, exponentials.
//! - [`clifford`] — qubit generators `e_k`, Dirac matrices, Jordan-Wigner
//!   fermionic operators, the two-gate universal set.
//! - [`weyl`] — the shift/clock Weyl pair, qudit generators `t_k`, and their
//!   anti-Hermitian combinations.
//! - [`closure`] — Lie-algebra closure under commutators and universality
//!   decisions.
//! - [`synthesis`] — compilation of target unitaries into gate sequences via
//!   Trotter splitting and group commutators.
//! - [`processor`] — the program-bus/data-bus processor simulator and its
//!   program parser.
//! - [`cli`] — the `weylgate` command-line front end.

// Index loops read naturally for dense matrix kernels.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod clifford;
pub mod closure;
pub mod eigen;
pub mod matrix;
pub mod processor;
pub mod synthesis;
pub mod weyl;

pub use matrix::{ComplexMatrix, ComplexVector, MatrixError};
