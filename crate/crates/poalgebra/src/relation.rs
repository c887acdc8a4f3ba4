//! Binary relations between finite interface sets.
//!
//! A relation `m -> n` is a subset of `[m] x [n]`. Relations embed into
//! poset morphisms as the internal-event-free ones: `i` related to `j`
//! becomes source `i` below target `j`. Relational composition matches
//! poset composition under that embedding, which the verification suites
//! check exhaustively at small sizes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::morphism::PosetMorphism;

/// A binary relation from `[m]` to `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    m: usize,
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(m: usize, n: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let mut set = BTreeSet::new();
        for &(i, j) in pairs {
            if i >= m || j >= n {
                return Err(Error::Malformed(format!(
                    "pair ({i}, {j}) out of range for a relation {m} -> {n}"
                )));
            }
            set.insert((i, j));
        }
        Ok(Relation { m, n, pairs: set })
    }

    /// The empty relation.
    pub fn empty(m: usize, n: usize) -> Self {
        Relation { m, n, pairs: BTreeSet::new() }
    }

    /// The diagonal on `[n]`.
    pub fn id(n: usize) -> Self {
        Relation { m: n, n, pairs: (0..n).map(|i| (i, i)).collect() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Relational composition: `i (self;g) k` iff some `j` has `i self j`
    /// and `j g k`.
    pub fn compose(&self, g: &Relation) -> Result<Relation, Error> {
        if self.n != g.m {
            return Err(Error::Composition { cod: self.n, dom: g.m });
        }
        let mut pairs = BTreeSet::new();
        for &(i, j) in &self.pairs {
            for k in 0..g.n {
                if g.contains(j, k) {
                    pairs.insert((i, k));
                }
            }
        }
        Ok(Relation { m: self.m, n: g.n, pairs })
    }

    /// Disjoint (block) union, `self` on the left.
    pub fn tensor(&self, g: &Relation) -> Relation {
        let mut pairs: BTreeSet<(usize, usize)> = self.pairs.clone();
        pairs.extend(g.pairs.iter().map(|&(i, j)| (self.m + i, self.n + j)));
        Relation { m: self.m + g.m, n: self.n + g.n, pairs }
    }

    /// The converse relation `n -> m`.
    pub fn transpose(&self) -> Relation {
        Relation { m: self.n, n: self.m, pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect() }
    }

    /// The poset morphism with no internal events whose boundary order is
    /// exactly this relation.
    pub fn to_poset(&self) -> PosetMorphism {
        let pairs: Vec<(usize, usize)> = self.iter().map(|(i, j)| (i, self.m + j)).collect();
        PosetMorphism::from_parts(self.m, self.n, 0, &pairs)
            .expect("a boundary-only order is always valid")
    }

    /// Reads back a relation from a morphism without internal events.
    /// Returns `None` when the morphism has internal events.
    pub fn from_poset(f: &PosetMorphism) -> Option<Relation> {
        if f.internal_count() != 0 {
            return None;
        }
        let mut pairs = BTreeSet::new();
        for i in 0..f.m() {
            for j in 0..f.n() {
                if f.lt(f.src(i), f.tgt(j)) {
                    pairs.insert((i, j));
                }
            }
        }
        Some(Relation { m: f.m(), n: f.n(), pairs })
    }
}
