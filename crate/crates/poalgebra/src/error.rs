//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in this crate.
///
/// Domain errors are data, not panics: malformed input, arity mismatches,
/// stale rewrite positions, and searches that exceed their guards all come
/// back through this type. Panics are reserved for broken internal
/// invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Transitive closure would force both `a < b` and `b < a`.
    Cycle { a: usize, b: usize },
    /// Sequential composition where the middle arities disagree.
    Composition { cod: usize, dom: usize },
    /// The two operands must be parallel (same source and target arity).
    NotParallel,
    /// Term text rejected at the given byte offset.
    Parse { at: usize, msg: String },
    /// A rewrite position that no longer matches the subject term.
    StalePosition,
    /// The event sequence is not a linearization of the internal events.
    BadLinearization,
    /// Adjacent blocks are order-related, so they cannot be switched.
    DependentBlocks { index: usize },
    /// Structurally invalid data, with a short description.
    Malformed(String),
    /// Input exceeds a size guard; the field is the offending count.
    TooLarge(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Cycle { a, b } => {
                write!(f, "order closure forces a cycle between events {a} and {b}")
            }
            Error::Composition { cod, dom } => {
                write!(f, "cannot compose: left target arity {cod} != right source arity {dom}")
            }
            Error::NotParallel => write!(f, "operands are not parallel"),
            Error::Parse { at, msg } => write!(f, "parse error at byte {at}: {msg}"),
            Error::StalePosition => write!(f, "rewrite position does not match the subject term"),
            Error::BadLinearization => {
                write!(f, "sequence is not a linearization of the internal events")
            }
            Error::DependentBlocks { index } => {
                write!(f, "blocks {index} and {} are order-dependent", index + 1)
            }
            Error::Malformed(msg) => write!(f, "malformed input: {msg}"),
            Error::TooLarge(n) => write!(f, "input size {n} exceeds the supported bound"),
        }
    }
}
