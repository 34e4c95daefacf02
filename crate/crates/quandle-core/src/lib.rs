//! Racks and quandles as computational objects.
//!
//! The crate provides finite quandles as verified operation tables together
//! with the classical group-derived constructions (conjugation, core,
//! Alexander, coset quandles), free racks and free quandles with normal
//! forms and an embedding into free-group conjugation, finitely presented
//! quandles with homomorphism enumeration and a two-procedure word-problem
//! semi-decision, and knot-quandle presentations read off braid words and
//! signed crossing lists.
//!
//! Everything here is pure computation on immutable values: the crate is
//! `no_std` (with `alloc`) and safe to use from many threads without
//! coordination.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod free_group;
pub mod free_quandle;
pub mod group;
pub mod knot;
pub mod perm;
pub mod present;
pub mod quandle;

pub use free_group::{GeneratorSet, GroupWord, Letter};
pub use perm::Permutation;
pub use quandle::{FiniteQuandle, QuandleHom};
