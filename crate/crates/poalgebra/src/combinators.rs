//! Term combinators for assembling factorization blocks.
//!
//! The bridge from posets back to syntax renders everything from a small
//! kit: block crossings expanded to binary ones, and a three-stage build of
//! the elementary internal-event block (append a fresh wire, feed it the
//! chosen inputs, seal it with the internal-event generator). Fixed
//! expansion orders keep every builder deterministic; the rewrite rules
//! make the order semantically irrelevant.

use alloc::vec::Vec;

use crate::term::{Generator, Term};

fn seq(a: Term, b: Term) -> Term {
    Term::seq(a, b).expect("combinator arities chain")
}

/// The first wire crosses `n` wires to its right, one crossing at a time.
fn gamma_one(n: usize) -> Term {
    if n == 0 {
        return Term::id(1);
    }
    let first = Term::par(Term::gen(Generator::Gamma), Term::id(n - 1));
    seq(first, Term::par(Term::id(1), gamma_one(n - 1)))
}

/// The block transposition `m + n -> n + m`, expanded to binary crossings:
/// the last wire of the left block crosses the right block, then the rest
/// of the left block follows.
pub fn gamma_block(m: usize, n: usize) -> Term {
    if m == 0 {
        Term::id(n)
    } else if n == 0 {
        Term::id(m)
    } else if m == 1 {
        gamma_one(n)
    } else {
        let first = Term::par(Term::id(m - 1), gamma_one(n));
        seq(first, Term::par(gamma_block(m - 1, n), Term::id(1)))
    }
}

/// `id<i> * gamma * id<n - i>`: wires i and i+1 cross among n + 2.
///
/// Panics if `i > n`.
pub fn cross_at(n: usize, i: usize) -> Term {
    Term::par(Term::par(Term::id(i), Term::gen(Generator::Gamma)), Term::id(n - i))
}

/// Appends a fresh wire on the right of `n` wires.
pub fn append_wire(n: usize) -> Term {
    Term::par(Term::id(n), Term::gen(Generator::Eta))
}

/// The internal-event generator on the last of `n + 1` wires.
pub fn sigma_last(n: usize) -> Term {
    Term::par(Term::id(n), Term::gen(Generator::Sigma))
}

/// Duplicates input `i` and merges the copy into the last of `n + 1`
/// wires: the last wire comes to depend on input `i`.
///
/// Panics if `i >= n`.
pub fn feed_last(n: usize, i: usize) -> Term {
    assert!(i < n, "feed index {i} out of range for {n} inputs");
    let split =
        Term::par(Term::par(Term::id(i), Term::gen(Generator::Delta)), Term::id(n - i));
    let route =
        Term::par(Term::par(Term::id(i + 1), gamma_block(1, n - i - 1)), Term::id(1));
    let merge = Term::par(Term::id(n), Term::gen(Generator::Mu));
    seq(seq(split, route), merge)
}

/// Feeds every listed input into the last wire, in ascending index order
/// (duplicates ignored). The empty set is the identity on `n + 1` wires.
pub fn feed_all(n: usize, inputs: &[usize]) -> Term {
    let mut set: Vec<usize> = inputs.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut acc: Option<Term> = None;
    for &i in &set {
        let f = feed_last(n, i);
        acc = Some(match acc {
            None => f,
            Some(t) => seq(t, f),
        });
    }
    acc.unwrap_or_else(|| Term::id(n + 1))
}

/// The elementary internal-event block `n -> n + 1` as a term: append a
/// fresh wire, feed it the chosen inputs, seal it with the internal-event
/// generator.
pub fn x_block_term(n: usize, inputs: &[usize]) -> Term {
    seq(seq(append_wire(n), feed_all(n, inputs)), sigma_last(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::{interp, tp_equal};
    use crate::morphism::PosetMorphism;

    #[test]
    fn gamma_blocks_interpret_as_symmetries() {
        for m in 0..=3 {
            for n in 0..=3 {
                let t = gamma_block(m, n);
                assert_eq!(t.dom(), m + n);
                assert_eq!(t.cod(), n + m);
                assert!(
                    interp(&t).iso_eq(&PosetMorphism::symmetry(m, n)).is_some(),
                    "gamma block {m},{n}"
                );
            }
        }
    }

    #[test]
    fn gamma_blocks_cancel() {
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            let round = Term::seq(gamma_block(m, n), gamma_block(n, m)).unwrap();
            assert_eq!(tp_equal(&round, &Term::id(m + n)), Ok(true));
        }
    }

    #[test]
    fn empty_block_is_a_tensor_padding_of_the_smallest_one() {
        // With nothing fed, the fresh event depends on nothing: the block
        // is the one-wire block beside n untouched wires.
        for n in 0..=3 {
            let lone = Term::par(Term::id(n), x_block_term(0, &[]));
            assert_eq!(tp_equal(&x_block_term(n, &[]), &lone), Ok(true), "n={n}");
        }
    }

    #[test]
    fn smallest_block_makes_one_event_below_one_target() {
        let p = interp(&x_block_term(0, &[]));
        let expect = PosetMorphism::from_parts(0, 1, 1, &[(1, 0)]).unwrap();
        assert!(p.iso_eq(&expect).is_some());
    }

    #[test]
    fn feeding_is_idempotent_semantically() {
        let one = feed_last(2, 0);
        let twice = Term::seq(one.clone(), one.clone()).unwrap();
        assert_eq!(tp_equal(&twice, &one), Ok(true));
    }

    #[test]
    fn feeds_commute_semantically() {
        let ab = Term::seq(feed_last(3, 0), feed_last(3, 2)).unwrap();
        let ba = Term::seq(feed_last(3, 2), feed_last(3, 0)).unwrap();
        assert_eq!(tp_equal(&ab, &ba), Ok(true));
        // feed_all uses the ascending order.
        assert_eq!(feed_all(3, &[2, 0, 2]), ab);
    }

    #[test]
    fn crossings_sit_where_asked() {
        let t = cross_at(2, 1);
        assert_eq!((t.dom(), t.cod()), (4, 4));
        assert!(interp(&t)
            .iso_eq(
                &PosetMorphism::identity(1)
                    .tensor(&PosetMorphism::symmetry(1, 1))
                    .tensor(&PosetMorphism::identity(1))
            )
            .is_some());
    }
}
