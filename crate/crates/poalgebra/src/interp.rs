//! Evaluation of terms in the category of interfaced posets.
//!
//! Each generator denotes a small fixed morphism; identities, sequential and
//! parallel composites evaluate structurally. Evaluation is the semantic
//! side of every verification suite: two terms are semantically equal when
//! their values are isomorphic over fixed interfaces.

use crate::error::Error;
use crate::morphism::PosetMorphism;
use crate::term::{Generator, Term};

/// The poset denotation of a single generator.
///
/// `eta` is one target event, `eps` one source event, `mu` and `delta` are
/// the merge and split cospans, `gamma` the crossing, and `sigma` the only
/// generator with an internal event: a three-event chain.
pub fn generator_poset(g: Generator) -> PosetMorphism {
    let f = match g {
        Generator::Eta => PosetMorphism::from_parts(0, 1, 0, &[]),
        Generator::Mu => PosetMorphism::from_parts(2, 1, 0, &[(0, 2), (1, 2)]),
        Generator::Eps => PosetMorphism::from_parts(1, 0, 0, &[]),
        Generator::Delta => PosetMorphism::from_parts(1, 2, 0, &[(0, 1), (0, 2)]),
        Generator::Sigma => PosetMorphism::from_parts(1, 1, 1, &[(0, 2), (2, 1)]),
        Generator::Gamma => PosetMorphism::from_parts(2, 2, 0, &[(0, 3), (1, 2)]),
    };
    f.expect("generator denotations are valid")
}

/// Evaluates a term to its poset morphism.
pub fn interp(t: &Term) -> PosetMorphism {
    match t.node() {
        crate::term::Node::Gen(g) => generator_poset(*g),
        crate::term::Node::Id(n) => PosetMorphism::identity(*n),
        crate::term::Node::Seq(f, g) => {
            interp(f).compose(&interp(g)).expect("well-typed terms compose")
        }
        crate::term::Node::Par(f, g) => interp(f).tensor(&interp(g)),
    }
}

/// Semantic equality of two parallel terms: their values are isomorphic
/// over fixed interfaces. Non-parallel operands are an error, not `false`.
pub fn tp_equal(a: &Term, b: &Term) -> Result<bool, Error> {
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return Err(Error::NotParallel);
    }
    Ok(interp(a).iso_eq(&interp(b)).is_some())
}

/// Terms denoting relations are exactly the `sigma`-free ones.
pub fn is_relation_term(t: &Term) -> bool {
    !t.mentions_sigma()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    #[test]
    fn generator_shapes() {
        for g in Generator::ALL {
            let f = generator_poset(g);
            assert_eq!((f.m(), f.n()), (g.dom(), g.cod()), "{}", g.name());
        }
        assert_eq!(generator_poset(Generator::Sigma).internal_count(), 1);
        for g in [Generator::Eta, Generator::Mu, Generator::Eps, Generator::Delta, Generator::Gamma]
        {
            assert_eq!(generator_poset(g).internal_count(), 0, "{}", g.name());
        }
        let gamma = generator_poset(Generator::Gamma);
        assert!(gamma.lt(0, 3) && gamma.lt(1, 2));
        assert!(!gamma.lt(0, 2) && !gamma.lt(1, 3));
    }

    #[test]
    fn identity_term_evaluates_to_identity() {
        assert_eq!(interp(&Term::id(3)), PosetMorphism::identity(3));
    }

    #[test]
    fn split_then_merge_collapses_to_identity() {
        let t = parse("delta ; mu").unwrap();
        assert!(interp(&t).iso_eq(&PosetMorphism::identity(1)).is_some());
    }

    #[test]
    fn creating_then_discarding_leaves_nothing() {
        let t = parse("eta ; eps").unwrap();
        let v = interp(&t);
        assert_eq!((v.m(), v.n(), v.events()), (0, 0, 0));
    }

    #[test]
    fn chain_through_sigma_threads_the_internal_event() {
        let t = parse("delta ; (id1 * sigma) ; mu").unwrap();
        assert_eq!(tp_equal(&t, &parse("sigma").unwrap()), Ok(true));
    }

    #[test]
    fn crossings_cancel() {
        let t = parse("gamma ; gamma").unwrap();
        assert_eq!(tp_equal(&t, &Term::id(2)), Ok(true));
    }

    #[test]
    fn tp_equal_requires_parallel_operands() {
        let a = parse("mu").unwrap();
        let b = parse("delta").unwrap();
        assert_eq!(tp_equal(&a, &b), Err(Error::NotParallel));
    }

    #[test]
    fn sigma_freedom_classifies_relation_terms() {
        assert!(is_relation_term(&parse("delta ; (mu * eta)").unwrap()));
        assert!(!is_relation_term(&parse("delta ; (sigma * id1) ; mu").unwrap()));
    }
}
