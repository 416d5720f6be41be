//! Exact-arithmetic toolkit for finite-dimensional quiver algebras with
//! relations, bounded complexes of projective modules, and two-term tilting
//! certificates in the bounded homotopy category.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere in the crate. The main entry points are:
//!
//! - [`quivalg::FDAlgebra::construct`] builds a finite-dimensional algebra
//!   from a quiver with relations and certifies the result (stabilization,
//!   associativity, relation vanishing).
//! - [`homotopy`] computes Hom-spaces of bounded complexes of projectives
//!   modulo null-homotopy, endomorphism algebras of decomposed complexes,
//!   and the two-term tilting report.
//! - [`tiltbench::run_pipeline`] chains the tilting certificate, the
//!   endomorphism-algebra extraction, a presentation check against a
//!   candidate algebra, and a derived-invariant comparison.
//! - [`d2n`] ships the cyclic Nakayama family and its two-term tilting
//!   complex together with the canonical candidate assignment.
//! - [`postnikov`] ingests ice quivers with potential and builds frozen
//!   Jacobian quotients.

pub mod d2n;
pub mod error;
pub mod exactla;
pub mod homotopy;
pub mod postnikov;
pub mod quivalg;
pub mod tiltbench;

pub use error::{Error, Result};
