//! Slice decomposition of terms and interchange normal forms.
//!
//! Every term flattens to a list of slices, each a single generator
//! whiskered by identity wires: `id<left> * g * id<right>`. Two consecutive
//! slices acting on disjoint wire intervals can swap (the interchange law),
//! which generates exactly the structural congruence of the monoidal
//! axioms. The normal form of a slice list is the lexicographically least
//! list reachable by such swaps, so two terms are structurally congruent
//! iff their normal forms agree.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::term::{par_all, Generator, Node, Term};

/// One generator at a horizontal position: `id<left> * gen * id<right>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Slice {
    pub left: usize,
    pub gen: Generator,
    pub right: usize,
}

impl Slice {
    /// Wire count entering this slice.
    pub fn width_in(&self) -> usize {
        self.left + self.gen.dom() + self.right
    }

    /// Wire count leaving this slice.
    pub fn width_out(&self) -> usize {
        self.left + self.gen.cod() + self.right
    }

    /// The whiskered term `id<left> * gen * id<right>`.
    pub fn to_term(&self) -> Term {
        par_all([Term::id(self.left), Term::gen(self.gen), Term::id(self.right)])
    }
}

/// Flattens a term into its slice list, in diagrammatic order.
///
/// For a parallel composite the left factor's slices come first; the normal
/// form erases that choice.
pub fn slices(t: &Term) -> Vec<Slice> {
    match t.node() {
        Node::Gen(g) => vec![Slice { left: 0, gen: *g, right: 0 }],
        Node::Id(_) => vec![],
        Node::Seq(f, g) => {
            let mut out = slices(f);
            out.extend(slices(g));
            out
        }
        Node::Par(f, g) => {
            let mut out: Vec<Slice> = slices(f)
                .into_iter()
                .map(|s| Slice { right: s.right + g.dom(), ..s })
                .collect();
            out.extend(slices(g).into_iter().map(|s| Slice { left: s.left + f.cod(), ..s }));
            out
        }
    }
}

/// Rebuilds a term from a slice list over `dom` input wires: the
/// right-nested sequential composite of the whiskered slices.
pub fn term_from_slices(dom: usize, list: &[Slice]) -> Term {
    match list.split_first() {
        None => Term::id(dom),
        Some((head, tail)) => {
            let rest = term_from_slices(head.width_out(), tail);
            if tail.is_empty() {
                head.to_term()
            } else {
                Term::seq(head.to_term(), rest).expect("slice widths chain")
            }
        }
    }
}

/// All ways consecutive slices `u` then `v` can interchange, each returning
/// the pair in the new order with offsets adjusted so the diagram is
/// unchanged.
///
/// `v` may move first when its generator zone is disjoint from `u`'s:
/// entirely to the left, or entirely to the right. Both readings hold at
/// once exactly when a zero-input slice sits at a zero-output slice's site
/// (the new wire can be born on either side of the dying one); the results
/// are distinct arrangements and both are returned, which keeps
/// reachability by swaps symmetric. Dependent slices yield none.
pub fn interchanges(u: &Slice, v: &Slice) -> Vec<(Slice, Slice)> {
    let (du, cu) = (u.gen.dom(), u.gen.cod());
    let (dv, cv) = (v.gen.dom(), v.gen.cod());
    let mut out = Vec::new();
    if v.left + dv <= u.left {
        // v is left of u: v keeps its offset, u shifts by v's width change.
        let w = u.width_in();
        let v2 = Slice { left: v.left, gen: v.gen, right: w - v.left - dv };
        let u2 = Slice { left: u.left + cv - dv, gen: u.gen, right: u.right };
        out.push((v2, u2));
    }
    if v.left >= u.left + cu {
        // v is right of u: u keeps its offset, v shifts by u's width change.
        let v2 = Slice { left: v.left + du - cu, gen: v.gen, right: v.right };
        let u2 = Slice { left: u.left, gen: u.gen, right: u.right + cv - dv };
        out.push((v2, u2));
    }
    out
}

/// A term's interchange class, named by its least representative.
///
/// `NormalForm` values are totally ordered and compare equal exactly when
/// the underlying terms are structurally congruent (equal modulo the
/// monoidal category axioms).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalForm {
    pub dom: usize,
    pub slices: Vec<Slice>,
}

impl NormalForm {
    pub fn of(t: &Term) -> NormalForm {
        NormalForm { dom: t.dom(), slices: normalize(&slices(t)) }
    }

    pub fn to_term(&self) -> Term {
        term_from_slices(self.dom, &self.slices)
    }

    pub fn cod(&self) -> usize {
        self.slices.last().map_or(self.dom, |s| s.width_out())
    }
}

/// Are two terms equal modulo the monoidal axioms (associativity, units,
/// interchange), with no generator rules involved?
pub fn congruent(a: &Term, b: &Term) -> bool {
    NormalForm::of(a) == NormalForm::of(b)
}

/// Upper bound on the interchange class size [`class`] will enumerate.
/// Classes larger than this are searched best-effort; at the scale this
/// crate verifies (a handful of slices) the bound is never reached.
pub const MAX_ARRANGEMENTS: usize = 20_000;

/// The interchange class of a slice list: every arrangement reachable by
/// swaps of adjacent independent slices, each paired with the permutation
/// of original indices that produced it.
///
/// Swapping is not free on indices: a slice's offset depends on which
/// width-changing slices precede it, so one index permutation can occur
/// with several distinct offset geometries. The class is therefore the
/// set of slice lists, not of permutations.
pub fn class(base: &[Slice]) -> Vec<(Vec<Slice>, Vec<usize>)> {
    let ident: Vec<usize> = (0..base.len()).collect();
    let mut seen: BTreeSet<Vec<Slice>> = BTreeSet::new();
    seen.insert(base.to_vec());
    let mut out = vec![(base.to_vec(), ident)];
    let mut next = 0;
    while next < out.len() && out.len() < MAX_ARRANGEMENTS {
        let (cur, perm) = out[next].clone();
        next += 1;
        for j in 0..cur.len().saturating_sub(1) {
            for (a, b) in interchanges(&cur[j], &cur[j + 1]) {
                let mut nxt = cur.clone();
                nxt[j] = a;
                nxt[j + 1] = b;
                if seen.insert(nxt.clone()) {
                    let mut np = perm.clone();
                    np.swap(j, j + 1);
                    out.push((nxt, np));
                }
            }
        }
    }
    out
}

/// The lexicographically least slice list reachable by interchange swaps.
pub fn normalize(list: &[Slice]) -> Vec<Slice> {
    class(list).into_iter().map(|(v, _)| v).min().unwrap_or_default()
}
