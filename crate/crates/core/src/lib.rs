//! Exact computation of the Kauffman bracket at `A = exp(i*pi/4)` and of
//! the matrix-valued invariants of punctured-ball tangles, together with
//! constructive realization of prescribed invariants and the embedding
//! and determinant obstructions they support.
//!
//! All values are immutable and every operation is a pure function, so
//! concurrent use needs no synchronization. The crate is `no_std`
//! compatible (allocation required); the default `std` feature only adds
//! `std::error::Error` impls.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bracket;
pub mod diagram;
pub mod expr;
pub mod faces;
pub mod invariants;
pub mod moves;
pub mod phi;
pub mod synth;
pub mod testkit;

pub use bracket::{
    bracket_full, bracket_monocyclic, bracket_skein, bracket_with, BracketError, BracketOpts,
    Evaluator, Smoothing, State, DEFAULT_CROSSING_CAP,
};
pub use diagram::{Attachment, Diagram, DiagramError, Label};
pub use expr::TangleExpr;
pub use invariants::{inv_f, inv_fn, InvariantError, PuncturedInvariant};
pub use phi::{gcd_list, xi, xi_proj, MultiIndex, PhiError, PhiScalar, ProjMatrix};
pub use synth::{euclid, synth_ball, EuclidTrace, Synthesis};
