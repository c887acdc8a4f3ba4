//! Desk-scale enumeration: morphisms up to isomorphism, slice lists up to
//! interchange.
//!
//! Morphism enumeration grows posets one internal event at a time. The new
//! event is always maximal among internals, so every class is reached
//! (delete a maximal internal event and recurse), and duplicates are cut by
//! canonical key. [`closed_classes_by_assignment`] counts 0 -> 0 classes by
//! a completely different route, sweeping all pairwise order assignments;
//! agreement between the two is part of the verification harness.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::canon::canonical_key;
use crate::error::Error;
use crate::morphism::PosetMorphism;
use crate::slice::{normalize, term_from_slices, Slice};
use crate::term::{Generator, Term};

/// Hard cap on total events for enumeration; the isomorphism search behind
/// deduplication is factorial in the internal-event count.
pub const MAX_ENUM_EVENTS: usize = 8;

/// One representative per isomorphism class of `m -> n` morphisms with at
/// most `max_internals` internal events, ordered by internal-event count
/// and then by canonical key.
pub fn hom_classes(
    m: usize,
    n: usize,
    max_internals: usize,
) -> Result<Vec<PosetMorphism>, Error> {
    let total = m + n + max_internals;
    if total > MAX_ENUM_EVENTS {
        return Err(Error::TooLarge(total));
    }
    let mut out = Vec::new();

    // No internal events: every subset of source-target pairs is its own
    // class (externals are pinned, so isomorphic means equal here).
    let mut layer: BTreeMap<Vec<u8>, PosetMorphism> = BTreeMap::new();
    for mask in 0..(1u64 << (m * n)) {
        let mut pairs = Vec::new();
        for i in 0..m {
            for j in 0..n {
                if mask >> (i * n + j) & 1 == 1 {
                    pairs.push((i, m + j));
                }
            }
        }
        let p = PosetMorphism::from_parts(m, n, 0, &pairs)
            .expect("bipartite source-target patterns are valid");
        layer.insert(canonical_key(&p)?, p);
    }

    for k in 1..=max_internals {
        out.extend(layer.values().cloned());
        let mut next: BTreeMap<Vec<u8>, PosetMorphism> = BTreeMap::new();
        for p in layer.values() {
            let e = p.events();
            let base = p.order().pairs();
            // The new event e sits above chosen sources and internals and
            // below chosen targets; closure fills in the rest. Choosing the
            // full lower and upper sets of any maximal-among-internals
            // event reproduces any extension, so this is exhaustive.
            for ds in 0..(1u32 << m) {
                for di in 0..(1u32 << (k - 1)) {
                    for ut in 0..(1u32 << n) {
                        let mut pairs = base.clone();
                        for i in 0..m {
                            if ds >> i & 1 == 1 {
                                pairs.push((i, e));
                            }
                        }
                        for x in 0..k - 1 {
                            if di >> x & 1 == 1 {
                                pairs.push((p.internal(x), e));
                            }
                        }
                        for j in 0..n {
                            if ut >> j & 1 == 1 {
                                pairs.push((e, m + j));
                            }
                        }
                        let q = PosetMorphism::from_parts(m, n, k, &pairs)
                            .expect("extension above internals cannot break the interface");
                        next.entry(canonical_key(&q)?).or_insert(q);
                    }
                }
            }
        }
        layer = next;
    }
    out.extend(layer.values().cloned());
    Ok(out)
}

/// One representative per isomorphism class with `m + n + internals` at
/// most `max_events`, over all arities, ordered by (m, n) and then as in
/// [`hom_classes`].
pub fn all_classes(max_events: usize) -> Result<Vec<PosetMorphism>, Error> {
    if max_events > MAX_ENUM_EVENTS {
        return Err(Error::TooLarge(max_events));
    }
    let mut out = Vec::new();
    for m in 0..=max_events {
        for n in 0..=max_events - m {
            out.extend(hom_classes(m, n, max_events - m - n)?);
        }
    }
    Ok(out)
}

/// Iso-class count of `0 -> 0` morphisms with exactly `k` events, by brute
/// force over all `3^(k choose 2)` pairwise assignments (below, above, or
/// incomparable), keeping the transitive ones. A generation path
/// independent of [`hom_classes`], used to validate it.
pub fn closed_classes_by_assignment(k: usize) -> Result<usize, Error> {
    if k > 5 {
        return Err(Error::TooLarge(k));
    }
    let idx: Vec<(usize, usize)> =
        (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
    let total = 3u64.pow(idx.len() as u32);
    let mut keys: BTreeSet<Vec<u8>> = BTreeSet::new();
    for code in 0..total {
        let mut lt = [[false; 5]; 5];
        let mut c = code;
        for &(a, b) in &idx {
            match c % 3 {
                1 => lt[a][b] = true,
                2 => lt[b][a] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..k).all(|a| {
            (0..k).all(|b| {
                !lt[a][b] || (0..k).all(|c| !lt[b][c] || lt[a][c])
            })
        });
        if !transitive {
            continue;
        }
        let mut pairs = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if lt[a][b] {
                    pairs.push((a, b));
                }
            }
        }
        let p = PosetMorphism::from_parts(0, 0, k, &pairs)
            .expect("transitive assignment is a valid order");
        keys.insert(canonical_key(&p)?);
    }
    Ok(keys.len())
}

/// The generators whose slice can follow a width-`w` boundary.
fn slice_choices(w: usize, max_width: usize) -> Vec<Slice> {
    let mut out = Vec::new();
    for g in Generator::ALL {
        if g.dom() > w || w - g.dom() + g.cod() > max_width {
            continue;
        }
        for left in 0..=w - g.dom() {
            out.push(Slice { left, gen: g, right: w - g.dom() - left });
        }
    }
    out
}

/// One term per interchange class of slice lists with at most `max_gens`
/// slices, where the boundary and every intermediate width stay within
/// `max_width`. Deterministically ordered by (domain, normal form).
pub fn term_classes(max_gens: usize, max_width: usize) -> Vec<Term> {
    let mut seen: BTreeSet<(usize, Vec<Slice>)> = BTreeSet::new();
    let mut frontier: Vec<(usize, Vec<Slice>)> = Vec::new();
    for dom in 0..=max_width {
        seen.insert((dom, Vec::new()));
        frontier.push((dom, Vec::new()));
    }
    for _ in 0..max_gens {
        let mut next = Vec::new();
        for (dom, list) in &frontier {
            let w = list.last().map_or(*dom, |s| s.width_out());
            for s in slice_choices(w, max_width) {
                let mut grown = list.clone();
                grown.push(s);
                let key = (*dom, normalize(&grown));
                if seen.insert(key.clone()) {
                    next.push((key.0, grown));
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().map(|(dom, nf)| term_from_slices(dom, &nf)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Classes of posets on 0..=4 unlabeled points. Standard counts,
    /// checkable by hand up to 3 points.
    const POSET_COUNTS: [usize; 5] = [1, 1, 2, 5, 16];

    fn classes_by_events(m: usize, n: usize, kmax: usize) -> Vec<usize> {
        let all = hom_classes(m, n, kmax).unwrap();
        let mut counts = alloc::vec![0usize; kmax + 1];
        for p in &all {
            counts[p.internal_count()] += 1;
        }
        counts
    }

    #[test]
    fn closed_morphism_counts_match_the_classical_table() {
        assert_eq!(classes_by_events(0, 0, 4), POSET_COUNTS);
    }

    #[test]
    fn assignment_sweep_agrees_with_layered_enumeration() {
        for k in 0..=4 {
            assert_eq!(closed_classes_by_assignment(k).unwrap(), POSET_COUNTS[k], "k={k}");
        }
    }

    #[test]
    fn boundary_only_hom_sets_count_their_patterns() {
        // With externals pinned, k = 0 classes are exactly the 2^(m*n)
        // bipartite patterns.
        assert_eq!(hom_classes(1, 1, 0).unwrap().len(), 2);
        assert_eq!(hom_classes(2, 2, 0).unwrap().len(), 16);
        assert_eq!(hom_classes(0, 3, 0).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_duplicate_free_and_deterministic() {
        let a = all_classes(4).unwrap();
        let b = all_classes(4).unwrap();
        assert_eq!(a.len(), b.len());
        let mut keys = BTreeSet::new();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.iso_eq(y).is_some());
            assert!(keys.insert(canonical_key(x).unwrap()), "duplicate class");
        }
    }

    #[test]
    fn enumeration_is_closed_under_dual() {
        let mut keys_of: BTreeMap<(usize, usize), BTreeSet<Vec<u8>>> = BTreeMap::new();
        for p in all_classes(4).unwrap() {
            keys_of.entry((p.m(), p.n())).or_default().insert(canonical_key(&p).unwrap());
        }
        for p in all_classes(4).unwrap() {
            let d = p.dual();
            let bucket = keys_of.get(&(d.m(), d.n())).expect("dual arity enumerated");
            assert!(bucket.contains(&canonical_key(&d).unwrap()));
        }
    }

    #[test]
    fn over_budget_enumeration_is_rejected() {
        assert_eq!(all_classes(9), Err(Error::TooLarge(9)));
        assert_eq!(hom_classes(4, 4, 1), Err(Error::TooLarge(9)));
    }

    #[test]
    fn term_classes_count_identities_and_single_slices() {
        let zero_gen = term_classes(0, 3);
        assert_eq!(zero_gen.len(), 4, "identities of width 0..=3");
        // Single generator paddings within width 3: eta 6, mu 3, eps 6,
        // delta 3, sigma 6, gamma 3 (count pairs left+right within the
        // width budget on both sides), plus the 4 identities.
        let one_gen = term_classes(1, 3);
        assert_eq!(one_gen.len(), 4 + 27);
    }

    #[test]
    fn term_classes_merge_interchange_variants() {
        let two = term_classes(2, 2);
        // eta * eta appears once, not once per interleaving.
        let count = two
            .iter()
            .filter(|t| {
                t.dom() == 0
                    && t.cod() == 2
                    && t.gen_count() == 2
                    && crate::slice::congruent(t, &crate::term::parse("eta * eta").unwrap())
            })
            .count();
        assert_eq!(count, 1);
    }
}
