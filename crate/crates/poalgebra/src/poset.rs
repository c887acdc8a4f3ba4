//! Strict partial orders on `0..len`, stored as a bit matrix.
//!
//! Row `a` holds the set `{b : a < b}`, packed into `u64` words, so
//! reachability closure is a word-parallel Warshall sweep and order queries
//! are single bit probes. Events are plain indices; the interface layout
//! (which indices are sources, targets, internals) lives one level up in
//! [`crate::morphism`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// A strict partial order on the events `0..len()`.
///
/// Invariants: irreflexive, transitive (every constructor either closes the
/// relation or preserves closure), hence antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    len: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Poset {
    /// The discrete order: no two events comparable.
    pub fn discrete(len: usize) -> Self {
        let words_per_row = len.div_ceil(64).max(1);
        Poset { len, words_per_row, bits: vec![0; len * words_per_row] }
    }

    /// Transitive closure of the generating pairs, rejecting cycles.
    ///
    /// Returns `Error::Cycle` when the closure would relate some pair in both
    /// directions (a reflexive generating pair counts, reported as `a == b`).
    pub fn close(len: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let mut p = Poset::discrete(len);
        for &(a, b) in pairs {
            assert!(a < len && b < len, "event out of range");
            if a == b {
                return Err(Error::Cycle { a, b });
            }
            p.set_lt(a, b);
        }
        p.close_in_place();
        p.check_acyclic()?;
        Ok(p)
    }

    /// Number of events.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Is `a < b`?
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        debug_assert!(a < self.len && b < self.len);
        self.bits[a * self.words_per_row + b / 64] >> (b % 64) & 1 == 1
    }

    /// Is `a < b` or `a == b`?
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    /// Are `a` and `b` incomparable distinct events?
    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        a != b && !self.lt(a, b) && !self.lt(b, a)
    }

    pub(crate) fn set_lt(&mut self, a: usize, b: usize) {
        self.bits[a * self.words_per_row + b / 64] |= 1 << (b % 64);
    }

    /// All strict pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len {
            for b in 0..self.len {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Warshall closure on the bit rows.
    pub(crate) fn close_in_place(&mut self) {
        let w = self.words_per_row;
        for k in 0..self.len {
            for i in 0..self.len {
                if i != k && self.lt(i, k) {
                    let (head, tail) = self.bits.split_at_mut(k.max(i) * w);
                    let (row_i, row_k) = if i < k {
                        (&mut head[i * w..i * w + w], &tail[..w])
                    } else {
                        (&mut tail[..w], &head[k * w..k * w + w])
                    };
                    for (wi, wk) in row_i.iter_mut().zip(row_k) {
                        *wi |= *wk;
                    }
                }
            }
        }
    }

    fn check_acyclic(&self) -> Result<(), Error> {
        for a in 0..self.len {
            if self.lt(a, a) {
                // Closed and reflexive at `a`: some b on the cycle has both
                // a < b and b < a (b = a only if a generating pair was
                // reflexive, which `close` rejects before ever getting here).
                for b in 0..self.len {
                    if a != b && self.lt(a, b) && self.lt(b, a) {
                        return Err(Error::Cycle { a, b });
                    }
                }
                return Err(Error::Cycle { a, b: a });
            }
        }
        Ok(())
    }

    /// Is the relation already transitively closed?
    pub fn is_closed(&self) -> bool {
        let mut probe = self.clone();
        probe.close_in_place();
        probe == *self
    }

    /// The covering pairs: `a < b` with no `c` strictly between.
    ///
    /// For a finite strict order this transitive reduction is unique.
    pub fn hasse_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len {
            'next_b: for b in 0..self.len {
                if !self.lt(a, b) {
                    continue;
                }
                for c in 0..self.len {
                    if self.lt(a, c) && self.lt(c, b) {
                        continue 'next_b;
                    }
                }
                out.push((a, b));
            }
        }
        out
    }

    /// Events with nothing strictly below them.
    pub fn is_minimal(&self, e: usize) -> bool {
        (0..self.len).all(|a| !self.lt(a, e))
    }

    /// Events with nothing strictly above them.
    pub fn is_maximal(&self, e: usize) -> bool {
        (0..self.len).all(|b| !self.lt(e, b))
    }

    /// The restriction of the order to `keep`, with event `i` of the result
    /// standing for `keep[i]`.
    ///
    /// Restriction of a closed relation is closed, so no re-closure happens.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let mut p = Poset::discrete(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.lt(a, b) {
                    p.set_lt(i, j);
                }
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_has_no_pairs() {
        let p = Poset::close(3, &[]).unwrap();
        assert_eq!(p.pairs(), vec![]);
        assert!(p.incomparable(0, 2));
        assert!(p.is_minimal(1) && p.is_maximal(1));
    }

    #[test]
    fn closure_adds_forced_pairs() {
        let p = Poset::close(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(p.hasse_pairs(), vec![(0, 1), (1, 2)]);
        assert!(p.is_closed());
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::close(2, &[(0, 1), (1, 0)]).unwrap_err();
        match err {
            Error::Cycle { a, b } => assert!(a != b),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn long_cycle_is_rejected() {
        assert!(matches!(
            Poset::close(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            Err(Error::Cycle { .. })
        ));
    }

    #[test]
    fn reflexive_pair_is_rejected() {
        assert_eq!(Poset::close(2, &[(1, 1)]), Err(Error::Cycle { a: 1, b: 1 }));
    }

    #[test]
    fn restriction_keeps_induced_order() {
        let p = Poset::close(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = p.restrict(&[0, 2, 3]);
        assert_eq!(q.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn wide_orders_cross_word_boundaries() {
        // 70 events: a chain 0 < 1 < ... < 69 exercises multi-word rows.
        let gen: Vec<(usize, usize)> = (0..69).map(|i| (i, i + 1)).collect();
        let p = Poset::close(70, &gen).unwrap();
        assert!(p.lt(0, 69));
        assert!(p.lt(3, 68));
        assert!(!p.lt(69, 0));
        assert_eq!(p.hasse_pairs().len(), 69);
        assert_eq!(p.pairs().len(), 70 * 69 / 2);
    }
}
