//! Matching rules modulo the monoidal axioms, applying them, and searching
//! for rewrite paths between terms.
//!
//! A rule side matches inside a subject term when, after some sequence of
//! interchange swaps, its slice list appears as a consecutive window of the
//! subject's slice list, uniformly whiskered (`id<a> * side * id<b>`). The
//! matcher therefore enumerates the subject's interchange class (all slice
//! arrangements reachable by swaps, with a cap), scans each arrangement for
//! windows, and keeps one position per footprint of rewritten slices.
//! Rule sides that are bare identities have empty slice lists; they match at
//! any cut between slices, at any wire offset, and applying one backwards
//! inserts the other side there.
//!
//! [`connected`] runs a bidirectional best-first search over interchange
//! normal forms, using every rule in both directions and expanding the
//! shortest terms first. A found path is a genuine derivation; `None` only
//! means no path surfaced within the application budget.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::Error;
use crate::rule::RuleSet;
use crate::slice::{class, normalize, slices, term_from_slices, NormalForm, Slice};
use crate::term::Term;

/// Orientation of a rule application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Direction {
    /// Replace the left side by the right side.
    Forward,
    /// Replace the right side by the left side.
    Backward,
}

impl Direction {
    /// The opposite orientation.
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Where a rule side occurs in a subject term.
///
/// `arrangement` is the concrete slice list, in the subject's interchange
/// class, that exposes the occurrence. It is stored whole because an index
/// permutation does not determine it: offsets depend on the swap route, and
/// distinct arrangements can share a permutation. The pattern occupies the
/// window starting at `start` (empty for identity patterns, which name a
/// cut instead) at wire offset `offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RedexPosition {
    pub arrangement: Vec<Slice>,
    pub start: usize,
    pub offset: usize,
}

/// A rule occurrence: which rule, which way, where.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Redex {
    /// Index into the rule set.
    pub rule: usize,
    pub direction: Direction,
    pub position: RedexPosition,
}

/// Does `window` equal the pattern whiskered as `id<a> * pat * id<b>`?
/// Returns the offset `a`.
fn window_offset(window: &[Slice], pat: &[Slice]) -> Option<usize> {
    let first = window.first()?;
    let p0 = pat.first()?;
    let a = first.left.checked_sub(p0.left)?;
    let b = first.right.checked_sub(p0.right)?;
    for (w, p) in window.iter().zip(pat) {
        if w.gen != p.gen || w.left != p.left + a || w.right != p.right + b {
            return None;
        }
    }
    Some(a)
}

/// Wire widths at every cut of a slice list: `widths[c]` is the width
/// between slice `c - 1` and slice `c`.
fn cut_widths(dom: usize, list: &[Slice]) -> Vec<usize> {
    let mut widths = Vec::with_capacity(list.len() + 1);
    widths.push(dom);
    for s in list {
        widths.push(s.width_out());
    }
    widths
}

struct Pattern {
    rule: usize,
    direction: Direction,
    slices: Vec<Slice>,
    dom: usize,
}

fn patterns(rules: &RuleSet, directions: &[Direction]) -> Vec<Pattern> {
    let mut out = Vec::new();
    for (i, r) in rules.rules().iter().enumerate() {
        for &direction in directions {
            let side = match direction {
                Direction::Forward => &r.lhs,
                Direction::Backward => &r.rhs,
            };
            out.push(Pattern { rule: i, direction, slices: slices(side), dom: side.dom() });
        }
    }
    out
}

fn find_with(t: &Term, rules: &RuleSet, directions: &[Direction]) -> Vec<Redex> {
    let base = slices(t);
    let pats = patterns(rules, directions);
    let arrs = class(&base);
    let mut out = Vec::new();
    // One representative is kept per footprint: which slices a window
    // rewrites at which offset, or which slices precede a cut at which
    // offset. Arrangements of the surrounding slices can still differ, and
    // in degenerate geometries (a new wire born where another dies) the
    // suppressed representatives may rewrite to inequivalent results, so
    // the returned set samples the occurrences rather than exhausting them.
    let mut seen_windows: BTreeSet<(usize, Direction, Vec<usize>, usize)> = BTreeSet::new();
    let mut seen_cuts: BTreeSet<(usize, Direction, Vec<usize>, usize)> = BTreeSet::new();
    for (arr, perm) in &arrs {
        let widths = cut_widths(t.dom(), arr);
        for pat in &pats {
            let l = pat.slices.len();
            if l == 0 {
                for cut in 0..=arr.len() {
                    if widths[cut] < pat.dom {
                        continue;
                    }
                    let mut before: Vec<usize> = perm[..cut].to_vec();
                    before.sort_unstable();
                    for offset in 0..=widths[cut] - pat.dom {
                        let key = (pat.rule, pat.direction, before.clone(), offset);
                        if seen_cuts.insert(key) {
                            out.push(Redex {
                                rule: pat.rule,
                                direction: pat.direction,
                                position: RedexPosition {
                                    arrangement: arr.clone(),
                                    start: cut,
                                    offset,
                                },
                            });
                        }
                    }
                }
            } else {
                if l > arr.len() {
                    continue;
                }
                for start in 0..=arr.len() - l {
                    let Some(offset) = window_offset(&arr[start..start + l], &pat.slices) else {
                        continue;
                    };
                    let mut slots: Vec<usize> = perm[start..start + l].to_vec();
                    slots.sort_unstable();
                    let key = (pat.rule, pat.direction, slots, offset);
                    if seen_windows.insert(key) {
                        out.push(Redex {
                            rule: pat.rule,
                            direction: pat.direction,
                            position: RedexPosition {
                                arrangement: arr.clone(),
                                start,
                                offset,
                            },
                        });
                    }
                }
            }
        }
    }
    out
}

/// All forward rule occurrences in `t`.
pub fn find_redexes(t: &Term, rules: &RuleSet) -> Vec<Redex> {
    find_with(t, rules, &[Direction::Forward])
}

/// All rule occurrences in `t`, both orientations.
pub fn find_redexes_bidirectional(t: &Term, rules: &RuleSet) -> Vec<Redex> {
    find_with(t, rules, &[Direction::Forward, Direction::Backward])
}

/// Applies one rule occurrence to `t`.
///
/// The position is re-validated from scratch: the claimed arrangement must
/// lie in the interchange class of `t`'s slices and the window must still
/// carry the pattern. A position minted for a different term fails with
/// [`Error::StalePosition`].
pub fn apply(t: &Term, rules: &RuleSet, redex: &Redex) -> Result<Term, Error> {
    let rule = rules
        .rules()
        .get(redex.rule)
        .ok_or_else(|| Error::Malformed(alloc::format!("rule index {} out of range", redex.rule)))?;
    let (pat_term, rep_term) = match redex.direction {
        Direction::Forward => (&rule.lhs, &rule.rhs),
        Direction::Backward => (&rule.rhs, &rule.lhs),
    };
    let pat = slices(pat_term);
    let rep = slices(rep_term);
    let base = slices(t);
    let pos = &redex.position;
    let arr = &pos.arrangement;

    // The widths must chain from the subject's domain before any swap
    // arithmetic can be trusted, and the arrangement must reach the same
    // class minimum as the subject's own slices.
    let mut width = t.dom();
    for s in arr {
        if s.width_in() != width {
            return Err(Error::StalePosition);
        }
        width = s.width_out();
    }
    if arr.len() != base.len() || normalize(arr) != normalize(&base) {
        return Err(Error::StalePosition);
    }

    splice_onto(t.dom(), pat_term.dom(), &pat, &rep, pos)
}

/// Splices `rep` over the window of `pos` after checking only the window
/// shape, not membership of the arrangement in any term's class. Callers
/// that mint positions themselves (the search loop) use this directly; the
/// public [`apply`] adds the class check first.
fn splice_onto(
    dom: usize,
    pat_dom: usize,
    pat: &[Slice],
    rep: &[Slice],
    pos: &RedexPosition,
) -> Result<Term, Error> {
    let arr = &pos.arrangement;
    let l = pat.len();
    if pos.start + l > arr.len() {
        return Err(Error::StalePosition);
    }
    let right = if l == 0 {
        let widths = cut_widths(dom, arr);
        let w = widths[pos.start];
        if pos.offset + pat_dom > w {
            return Err(Error::StalePosition);
        }
        w - pos.offset - pat_dom
    } else {
        match window_offset(&arr[pos.start..pos.start + l], pat) {
            Some(a) if a == pos.offset => arr[pos.start].right - pat[0].right,
            _ => return Err(Error::StalePosition),
        }
    };

    let mut next: Vec<Slice> = arr[..pos.start].to_vec();
    next.extend(rep.iter().map(|s| Slice {
        left: s.left + pos.offset,
        gen: s.gen,
        right: s.right + right,
    }));
    next.extend(arr[pos.start + l..].iter().copied());
    Ok(term_from_slices(dom, &next))
}

/// One step of a derivation returned by [`connected`]. The redex applies to
/// the interchange normal form of the term at that point, so replaying a
/// path normalizes before every step (see [`replay`]).
pub type Path = Vec<Redex>;

/// The redex that undoes `redex`: same rule, opposite orientation, anchored
/// at the slice list the application produced. Applying it splices the
/// pattern back over the replacement and restores the original arrangement
/// exactly.
fn inverse_of(redex: &Redex, spliced: &[Slice]) -> Redex {
    Redex {
        rule: redex.rule,
        direction: redex.direction.flipped(),
        position: RedexPosition {
            arrangement: spliced.to_vec(),
            start: redex.position.start,
            offset: redex.position.offset,
        },
    }
}

/// How many generator occurrences beyond the larger endpoint an
/// intermediate term of the search may carry. Backward rule steps can grow
/// terms without bound; past this slack the interchange classes get large
/// enough to drown the search, so such nodes are not explored.
const GROWTH_SLACK: usize = 2;

/// Default application budget for [`connected`]: generous enough for
/// desk-scale equalities, small enough that exhausting it on genuinely
/// distinct terms stays in the low seconds.
pub const DEFAULT_BUDGET: usize = 3000;

/// Searches for a derivation connecting two parallel terms, trying every
/// rule in both directions from both ends.
///
/// `budget` bounds the number of rule applications explored in total, and
/// intermediate terms are only explored within [`GROWTH_SLACK`] generators
/// of the larger endpoint. `Ok(None)` means no derivation surfaced within
/// those limits; it is not a proof of separation. A returned path is
/// verified by construction.
pub fn connected(
    a: &Term,
    b: &Term,
    rules: &RuleSet,
    budget: usize,
) -> Result<Option<Path>, Error> {
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return Err(Error::NotParallel);
    }
    let na = NormalForm::of(a);
    let nb = NormalForm::of(b);
    if na == nb {
        return Ok(Some(vec![]));
    }
    let cap = na.slices.len().max(nb.slices.len()) + GROWTH_SLACK;

    // parents[side]: node -> the edge that discovered it, as (predecessor,
    // redex applied at the predecessor).
    let mut parents: [BTreeMap<NormalForm, Option<(NormalForm, Redex)>>; 2] =
        [BTreeMap::new(), BTreeMap::new()];
    parents[0].insert(na.clone(), None);
    parents[1].insert(nb.clone(), None);
    let mut frontiers: [BinaryHeap<Reverse<(usize, NormalForm)>>; 2] =
        [BinaryHeap::new(), BinaryHeap::new()];
    frontiers[0].push(Reverse((na.slices.len(), na.clone())));
    frontiers[1].push(Reverse((nb.slices.len(), nb.clone())));
    let mut explored = 0usize;

    let meet = 'search: loop {
        // Expand the smaller live frontier, shortest term first: equal terms
        // usually meet through contracted representatives, so shrinking
        // steps are worth exploring before growing ones.
        let side = match (frontiers[0].len(), frontiers[1].len()) {
            (0, 0) => break None,
            (0, _) => 1,
            (_, 0) => 0,
            (la, lb) => usize::from(lb < la),
        };
        if explored >= budget {
            break None;
        }
        let Reverse((_, node)) = frontiers[side].pop().expect("chosen side is nonempty");
        let term = node.to_term();
        for redex in find_redexes_bidirectional(&term, rules) {
            if explored >= budget {
                break 'search None;
            }
            explored += 1;
            // The redex was just minted on `term`, so the class check inside
            // `apply` is redundant; splice directly.
            let rule = &rules.rules()[redex.rule];
            let (pat_term, rep_term) = match redex.direction {
                Direction::Forward => (&rule.lhs, &rule.rhs),
                Direction::Backward => (&rule.rhs, &rule.lhs),
            };
            let child_term = splice_onto(
                term.dom(),
                pat_term.dom(),
                &slices(pat_term),
                &slices(rep_term),
                &redex.position,
            )
            .expect("freshly minted redex applies");
            if child_term.gen_count() > cap {
                continue;
            }
            let child = NormalForm::of(&child_term);
            if parents[side].contains_key(&child) {
                continue;
            }
            parents[side].insert(child.clone(), Some((node.clone(), redex)));
            if parents[1 - side].contains_key(&child) {
                break 'search Some(child);
            }
            frontiers[side].push(Reverse((child.slices.len(), child)));
        }
    };

    let Some(meet) = meet else {
        return Ok(None);
    };

    // Both trees store the redex in the direction it was applied. Edges on
    // `a`'s side already point along the path; walking up from the meet
    // yields them last step first.
    let mut path: Vec<Redex> = Vec::new();
    let mut walk = meet.clone();
    while let Some((parent, redex)) = parents[0].get(&walk).cloned().flatten() {
        path.push(redex);
        walk = parent;
    }
    path.reverse();

    // Edges on `b`'s side run against the path, each applied at its parent;
    // the path takes their inverses, anchored at the spliced arrangements
    // the applications produced. Constructing the inverse from the stored
    // edge avoids a fresh search, which is only guaranteed to surface one
    // representative per footprint.
    let mut walk = meet;
    while let Some((parent, redex)) = parents[1].get(&walk).cloned().flatten() {
        let spliced = apply(&parent.to_term(), rules, &redex).expect("stored search edge replays");
        path.push(inverse_of(&redex, &slices(&spliced)));
        walk = parent;
    }
    Ok(Some(path))
}

/// Replays a derivation from `t`: normalizes, applies each step in turn,
/// and returns the final term.
pub fn replay(t: &Term, rules: &RuleSet, path: &[Redex]) -> Result<Term, Error> {
    let mut cur = t.clone();
    for step in path {
        cur = apply(&NormalForm::of(&cur).to_term(), rules, step)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::tp_equal;
    use crate::slice::congruent;
    use crate::term::parse;

    fn rules() -> RuleSet {
        RuleSet::standard()
    }

    fn nf(t: &Term) -> NormalForm {
        NormalForm::of(t)
    }

    #[test]
    fn forward_match_in_a_whiskered_context() {
        let rs = rules();
        let t = parse("id1 * ((eta * id1) ; mu)").unwrap();
        let found = find_redexes(&t, &rs);
        let unit_l = rs.by_name("unit-l").unwrap();
        let idx = rs.rules().iter().position(|r| r.name == "unit-l").unwrap();
        assert_eq!(unit_l.lhs.gen_count(), 2);
        let hit = found.iter().find(|r| r.rule == idx).expect("unit-l occurs");
        assert_eq!(hit.position.offset, 1);
        let applied = apply(&t, &rs, hit).unwrap();
        assert!(congruent(&applied, &Term::id(2)));
    }

    #[test]
    fn matching_crosses_interleaved_independent_slices() {
        // The eta and mu of unit-l are separated by a sigma on another wire;
        // interchange swaps must expose the window.
        let rs = rules();
        let t = parse("(eta * id1) ; (id1 * sigma) ; mu").unwrap();
        let idx = rs.rules().iter().position(|r| r.name == "unit-l").unwrap();
        let hit = find_redexes(&t, &rs)
            .into_iter()
            .find(|r| r.rule == idx)
            .expect("unit-l occurs modulo interchange");
        let applied = apply(&t, &rs, &hit).unwrap();
        assert!(congruent(&applied, &parse("sigma").unwrap()));
    }

    #[test]
    fn backward_identity_patterns_insert_at_cuts() {
        let rs = rules();
        let idx = rs.rules().iter().position(|r| r.name == "unit-l").unwrap();
        let t = Term::id(1);
        let hits: Vec<Redex> = find_redexes_bidirectional(&t, &rs)
            .into_iter()
            .filter(|r| r.rule == idx && r.direction == Direction::Backward)
            .collect();
        assert_eq!(hits.len(), 1, "one cut, one offset on a bare wire");
        let applied = apply(&t, &rs, &hits[0]).unwrap();
        assert!(congruent(&applied, &parse("(eta * id1) ; mu").unwrap()));
    }

    #[test]
    fn insertion_offsets_cover_the_width() {
        // Inserting eta;eps (a floating component) into id2 can happen at
        // offsets 0, 1, 2 of the single cut.
        let rs = rules();
        let idx = rs.rules().iter().position(|r| r.name == "eta-eps").unwrap();
        let t = Term::id(2);
        let hits: Vec<Redex> = find_redexes_bidirectional(&t, &rs)
            .into_iter()
            .filter(|r| r.rule == idx && r.direction == Direction::Backward)
            .collect();
        assert_eq!(hits.len(), 3);
        for h in &hits {
            let applied = apply(&t, &rs, h).unwrap();
            assert_eq!(tp_equal(&applied, &t), Ok(true));
        }
    }

    #[test]
    fn stale_positions_are_rejected() {
        let rs = rules();
        let t = parse("(eta * id1) ; mu").unwrap();
        let idx = rs.rules().iter().position(|r| r.name == "unit-l").unwrap();
        let hit = find_redexes(&t, &rs).into_iter().find(|r| r.rule == idx).unwrap();
        // Same redex against a different subject.
        let other = parse("(id1 * eta) ; mu").unwrap();
        match apply(&other, &rs, &hit) {
            Err(Error::StalePosition) => {}
            other => panic!("expected stale position, got {other:?}"),
        }
    }

    #[test]
    fn applying_preserves_semantics() {
        let rs = rules();
        let subjects = [
            "mu ; delta",
            "(delta * id1) ; (id1 * gamma) ; (mu * id1)",
            "delta ; (sigma * sigma) ; mu",
            "gamma ; gamma ; (eta * id2)",
        ];
        for src in subjects {
            let t = parse(src).unwrap();
            for redex in find_redexes_bidirectional(&t, &rs) {
                let applied = apply(&t, &rs, &redex).unwrap();
                assert_eq!(
                    tp_equal(&t, &applied),
                    Ok(true),
                    "{src} via {} {:?}",
                    rs.rules()[redex.rule].name,
                    redex.direction
                );
            }
        }
    }

    #[test]
    fn connected_finds_single_step_paths() {
        let rs = rules();
        let a = parse("delta ; mu").unwrap();
        let b = Term::id(1);
        let path = connected(&a, &b, &rs, 100).unwrap().expect("one step apart");
        assert_eq!(path.len(), 1);
        let replayed = replay(&a, &rs, &path).unwrap();
        assert_eq!(nf(&replayed), nf(&b));
    }

    #[test]
    fn connected_finds_multi_step_paths() {
        let rs = rules();
        let a = parse("(mu * id1) ; mu ; delta").unwrap();
        let b = parse("((id1 * mu) ; mu) ; (delta ; id2)").unwrap();
        let path = connected(&a, &b, &rs, 2_000).unwrap().expect("connected");
        assert!(!path.is_empty());
        let replayed = replay(&a, &rs, &path).unwrap();
        assert_eq!(nf(&replayed), nf(&b));
    }

    #[test]
    fn connected_equal_terms_is_the_empty_path() {
        let rs = rules();
        let a = parse("mu * eta").unwrap();
        let b = parse("(mu * id0) * eta").unwrap();
        assert_eq!(connected(&a, &b, &rs, 10).unwrap(), Some(vec![]));
    }

    #[test]
    fn connected_requires_parallel_terms() {
        let rs = rules();
        assert_eq!(
            connected(&parse("mu").unwrap(), &parse("delta").unwrap(), &rs, 10),
            Err(Error::NotParallel)
        );
    }

    #[test]
    fn semantically_distinct_terms_stay_unconnected() {
        let rs = rules();
        let a = parse("sigma").unwrap();
        let b = Term::id(1);
        assert_eq!(connected(&a, &b, &rs, 150).unwrap(), None);
    }

    #[test]
    fn crossing_cancellation_is_derivable() {
        let rs = rules();
        let a = parse("gamma ; gamma ; gamma").unwrap();
        let b = parse("gamma").unwrap();
        let path = connected(&a, &b, &rs, 500).unwrap().expect("inv applies");
        let replayed = replay(&a, &rs, &path).unwrap();
        assert_eq!(nf(&replayed), nf(&b));
    }
}
