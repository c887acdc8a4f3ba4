//! Finite posets with marked input and output interfaces, the monoidal
//! category they form, a generator-and-relation term language presenting it,
//! and the canonical-factorization machinery tying the two together.
//!
//! The crate has three layers:
//!
//! * concrete posets: [`poset::Poset`], [`morphism::PosetMorphism`],
//!   [`relation::Relation`], plus enumeration and canonical labeling;
//! * syntax: [`term::Term`] over the six-generator signature, slice
//!   decomposition and interchange normal forms in [`slice`], the rewrite
//!   system in [`rule`] and [`rewrite`];
//! * the bridge: evaluation of terms to posets in [`interp`], factorization
//!   of posets through a linearization in [`factor`], and the verification
//!   suites in [`harness`] that machine-check the presentation on bounded
//!   inputs.
//!
//! Everything is exact (no floats) and deterministic; randomized suites take
//! an explicit seed. The crate is `no_std` with `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod canon;
pub mod combinators;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod harness;
pub mod interp;
pub mod morphism;
pub mod poset;
pub mod relation;
pub mod rewrite;
pub mod rule;
pub mod slice;
pub mod term;

pub use error::Error;
