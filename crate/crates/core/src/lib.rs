//! Exact combinatorics of matrix spaces over small finite fields.
//!
//! The crate implements, with integer-exact arithmetic throughout:
//!
//! * finite fields GF(p^e) and matrices over them ([`gf`], [`matgf`]);
//! * the subspace lattice of F^m, Gaussian binomials and its Möbius
//!   function as Laurent polynomials ([`lattice`]);
//! * rank distributions of Ferrers boards and q-rook polynomials
//!   ([`ferrers`]);
//! * Krawtchouk coefficients of the rank, row-space and pivot partitions
//!   of F^(n x m), their character-sum oracles, dual partitions and
//!   MacWilliams transforms ([`kraw`]);
//! * rank-metric matrix codes: duals, shortenings, weight distributions,
//!   extremality and rigidity predictions ([`codes`]);
//! * linear maps preserving rank, row spaces or pivot profiles
//!   ([`preservers`]);
//! * a deterministic self-test suite wiring the closed forms against
//!   brute-force enumeration ([`selftest`]).
//!
//! Everything is deterministic: enumerations are canonically ordered and
//! randomized corpora are seeded explicitly.

pub mod budget;
pub mod codes;
pub mod error;
pub mod ferrers;
pub mod gf;
pub mod kraw;
pub mod lattice;
pub mod matgf;
pub mod preservers;
pub mod selftest;

pub use budget::Budget;
pub use error::{Error, Result};
