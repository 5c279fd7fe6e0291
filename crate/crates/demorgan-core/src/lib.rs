//! Finite de Morgan algebras and their congruence and duality theory.
//!
//! A de Morgan algebra is a bounded distributive lattice with a unary
//! operation `°` satisfying `x°° = x`, `(x ∧ y)° = x° ∨ y°` and `1° = 0`.
//! This crate works with finite algebras given by explicit operation
//! tables and provides three independent, mutually cross-checking routes
//! to the question of whether an algebra is a perfect extension of its
//! Boolean skeleton `B(M) = {x | x ∨ x° = 1}`:
//!
//! 1. [`congruence::is_perfect_extension`] computes the congruence
//!    lattices of `M` and `B(M)` and checks that restriction is a
//!    bijection between them;
//! 2. [`duality::condition3_holds`] checks the order condition
//!    `x ≼ y ⟹ x = y or x = f(y)` on the natural dual space of `M`;
//! 3. [`duality::decompose`] exhibits `M` as a direct product of copies
//!    of the two-, three- and four-element building blocks, or produces
//!    a dual witness plus a pair of congruences certifying failure.
//!
//! Everything is pure and deterministic: identical inputs produce
//! identical outputs, element by element, on every platform. The crate
//! is `no_std` (with `alloc`); IO, JSON schemas and the command-line
//! front end live in the companion `demorgan-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod congruence;
pub mod duality;
pub mod generator;
pub mod iso;

mod limits;

pub use limits::Limits;
