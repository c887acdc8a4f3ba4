//! Staged factorizations of poset morphisms.
//!
//! Every morphism can be sliced along a linearization of its internal
//! events: each event becomes a single-internal-event block that consumes
//! some of the wires present at its stage, and whatever order remains
//! between wires and targets becomes a plain relation at the end. The data
//! of such a factorization (the per-stage input sets and the final
//! relation) determines the morphism together with the linearization, and
//! adjacent independent events can be switched without changing the
//! composite. This module houses linearizations, the blocks, both
//! directions of the translation, the switch move, and the rendering of a
//! factorization as a term.
//!
//! A linearization is represented as the sequence of internal event
//! indices in the order they are listed; position `p` of the sequence is
//! the `p`-th event of the schedule.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::canonical_form;
use crate::combinators::{cross_at, x_block_term};
use crate::error::Error;
use crate::morphism::PosetMorphism;
use crate::relation::Relation;
use crate::term::{par_all, seq_all, Generator, Term};

/// Swap of the adjacent values `i` and `i + 1` inside `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transposition {
    pub n: usize,
    pub i: usize,
}

impl Transposition {
    pub fn new(n: usize, i: usize) -> Transposition {
        assert!(i + 1 < n, "transposition needs two values inside the range");
        Transposition { n, i }
    }

    pub fn apply(&self, v: usize) -> usize {
        debug_assert!(v < self.n);
        if v == self.i {
            self.i + 1
        } else if v == self.i + 1 {
            self.i
        } else {
            v
        }
    }
}

/// True when `x` lists every internal event index of `f` exactly once and
/// never lists an event before one that lies strictly below it.
pub fn is_linearization(f: &PosetMorphism, x: &[usize]) -> bool {
    let k = f.internal_count();
    if x.len() != k {
        return false;
    }
    let mut seen = vec![false; k];
    for &v in x {
        if v >= k || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for p in 0..k {
        for q in p + 1..k {
            if f.lt(f.internal(x[q]), f.internal(x[p])) {
                return false;
            }
        }
    }
    true
}

/// All linear extensions of the internal suborder of `f`, in lexicographic
/// order of the index sequences.
pub fn linearizations(f: &PosetMorphism) -> Vec<Vec<usize>> {
    let k = f.internal_count();
    let mut used = vec![false; k];
    let mut cur = Vec::with_capacity(k);
    let mut out = Vec::new();
    extend_linearization(f, &mut used, &mut cur, &mut out);
    out
}

fn extend_linearization(
    f: &PosetMorphism,
    used: &mut Vec<bool>,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let k = used.len();
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for v in 0..k {
        if used[v] || !unblocked(f, used, v) {
            continue;
        }
        used[v] = true;
        cur.push(v);
        extend_linearization(f, used, cur, out);
        cur.pop();
        used[v] = false;
    }
}

// An event may be scheduled once every internal event below it has been.
fn unblocked(f: &PosetMorphism, used: &[bool], v: usize) -> bool {
    (0..used.len()).all(|u| u == v || used[u] || !f.lt(f.internal(u), f.internal(v)))
}

/// The lexicographically least linear extension of the internal suborder.
pub fn lex_least_linearization(f: &PosetMorphism) -> Vec<usize> {
    let k = f.internal_count();
    let mut used = vec![false; k];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let v = (0..k)
            .find(|&v| !used[v] && unblocked(f, &used, v))
            .expect("a finite order always has an unscheduled minimal event");
        used[v] = true;
        out.push(v);
    }
    out
}

/// Detects a single adjacent swap: returns `i` when `x2` equals `x1` with
/// positions `i` and `i + 1` exchanged and the two events are incomparable.
pub fn lin_adjacent(f: &PosetMorphism, x1: &[usize], x2: &[usize]) -> Option<usize> {
    if x1.len() != x2.len() {
        return None;
    }
    let k = x1.len();
    let mut diff = (0..k).filter(|&p| x1[p] != x2[p]);
    let i = diff.next()?;
    if i + 1 >= k || diff.next() != Some(i + 1) || diff.next().is_some() {
        return None;
    }
    if x1[i] != x2[i + 1] || x1[i + 1] != x2[i] {
        return None;
    }
    let a = f.internal(x1[i]);
    let b = f.internal(x1[i + 1]);
    if f.order().incomparable(a, b) {
        Some(i)
    } else {
        None
    }
}

/// A path of adjacent swap positions turning `from` into `to`, found by
/// bubbling each event of `to` leftwards into place. Both sequences must be
/// linearizations of `f`; every intermediate step then swaps incomparable
/// events, so the whole path stays inside the linearizations of `f`.
pub fn lin_connect(f: &PosetMorphism, from: &[usize], to: &[usize]) -> Result<Vec<usize>, Error> {
    if !is_linearization(f, from) || !is_linearization(f, to) {
        return Err(Error::BadLinearization);
    }
    let mut cur = from.to_vec();
    let mut path = Vec::new();
    for j in 0..to.len() {
        let p = cur
            .iter()
            .position(|&v| v == to[j])
            .expect("both sequences schedule the same events");
        let mut q = p;
        while q > j {
            debug_assert!(f
                .order()
                .incomparable(f.internal(cur[q - 1]), f.internal(cur[q])));
            cur.swap(q - 1, q);
            path.push(q - 1);
            q -= 1;
        }
    }
    Ok(path)
}

/// The block morphism `n -> n + 1` with one internal event: wire `i` runs
/// straight through (`s(i) < t(i)`), the listed inputs feed the event, and
/// the event feeds the last target.
pub fn x_block(n: usize, inputs: &[usize]) -> PosetMorphism {
    let x = 2 * n + 1;
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
    for &i in inputs {
        assert!(i < n, "block input out of range");
        pairs.push((i, x));
    }
    pairs.push((x, 2 * n));
    PosetMorphism::from_parts(n, n + 1, 1, &pairs).expect("a block order is acyclic")
}

/// A staged decomposition of a morphism `m -> n`: `k` single-event blocks
/// applied in sequence, then a plain relation. Block `j` consumes the wires
/// listed in `blocks[j]`, which are indices into the `m + j` wires present
/// at its stage, and `rel` connects all `m + k` final wires to the targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub m: usize,
    pub n: usize,
    pub blocks: Vec<BTreeSet<usize>>,
    pub rel: Relation,
}

impl Factorization {
    pub fn new(
        m: usize,
        n: usize,
        blocks: Vec<BTreeSet<usize>>,
        rel: Relation,
    ) -> Result<Factorization, Error> {
        for (j, b) in blocks.iter().enumerate() {
            if b.iter().any(|&i| i >= m + j) {
                return Err(Error::Malformed(format!(
                    "block {} lists a wire outside its stage",
                    j
                )));
            }
        }
        if rel.m() != m + blocks.len() || rel.n() != n {
            return Err(Error::Malformed(format!(
                "relation is {} -> {}, stages end at {} -> {}",
                rel.m(),
                rel.n(),
                m + blocks.len(),
                n
            )));
        }
        Ok(Factorization { m, n, blocks, rel })
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Both closure conditions: a wire feeding a block feeds every later
    /// block that the block's own wire feeds, and likewise through `rel`.
    pub fn is_transitive(&self) -> bool {
        let m = self.m;
        for b2 in &self.blocks {
            for &e in b2 {
                if e >= m && !self.blocks[e - m].is_subset(b2) {
                    return false;
                }
            }
        }
        for (a, j) in self.rel.iter() {
            if a >= m {
                for &e in &self.blocks[a - m] {
                    if !self.rel.contains(e, j) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Least transitive factorization containing this one; the composite
    /// morphism is unchanged because every added entry is already forced
    /// by transitivity of the composite order.
    pub fn transitive_closure(&self) -> Factorization {
        let m = self.m;
        let mut blocks = self.blocks.clone();
        let mut pairs: BTreeSet<(usize, usize)> = self.rel.iter().collect();
        loop {
            let mut changed = false;
            for j2 in 0..blocks.len() {
                // A block wire in blocks[j2] always comes from an earlier
                // stage, so the clone never self-aliases.
                let feeds: Vec<usize> = blocks[j2]
                    .iter()
                    .filter(|&&e| e >= m)
                    .map(|&e| e - m)
                    .collect();
                for j1 in feeds {
                    for v in blocks[j1].clone() {
                        changed |= blocks[j2].insert(v);
                    }
                }
            }
            for (a, j) in pairs.clone() {
                if a >= m {
                    for &e in &blocks[a - m] {
                        changed |= pairs.insert((e, j));
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let flat: Vec<(usize, usize)> = pairs.into_iter().collect();
        let rel = Relation::new(m + blocks.len(), self.n, &flat)
            .expect("closure only adds in-range entries");
        Factorization {
            m,
            n: self.n,
            blocks,
            rel,
        }
    }
}

/// Composes the stages of a factorization into one morphism. The result's
/// internal event `j` is block `j`'s event, so the induced linearization is
/// the identity schedule, returned alongside.
pub fn fact_compose(f: &Factorization) -> (PosetMorphism, Vec<usize>) {
    let (m, n, k) = (f.m, f.n, f.k());
    // Wire a of a stage is source a when a < m, block a - m's event else.
    let event = |a: usize| if a < m { a } else { m + n + (a - m) };
    let mut pairs = Vec::new();
    for (j, b) in f.blocks.iter().enumerate() {
        for &a in b {
            pairs.push((event(a), m + n + j));
        }
    }
    for (a, j) in f.rel.iter() {
        pairs.push((event(a), m + j));
    }
    let g = PosetMorphism::from_parts(m, n, k, &pairs).expect("stages are acyclic");
    (g, (0..k).collect())
}

/// Factors `f` along the linearization `x`: block `j` consumes exactly the
/// wires lying below the `j`-th scheduled event, and the final relation
/// records which wires lie below each target.
pub fn factorize(f: &PosetMorphism, x: &[usize]) -> Result<Factorization, Error> {
    if !is_linearization(f, x) {
        return Err(Error::BadLinearization);
    }
    let (m, n, k) = (f.m(), f.n(), f.internal_count());
    let event = |p: usize| f.internal(x[p]);
    let mut blocks = Vec::with_capacity(k);
    for j in 0..k {
        let mut b = BTreeSet::new();
        for i in 0..m {
            if f.lt(i, event(j)) {
                b.insert(i);
            }
        }
        for p in 0..j {
            if f.lt(event(p), event(j)) {
                b.insert(m + p);
            }
        }
        blocks.push(b);
    }
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..m {
            if f.lt(i, f.tgt(j)) {
                pairs.push((i, j));
            }
        }
        for p in 0..k {
            if f.lt(event(p), f.tgt(j)) {
                pairs.push((m + p, j));
            }
        }
    }
    let rel = Relation::new(m + k, n, &pairs)?;
    Ok(Factorization { m, n, blocks, rel })
}

/// Exchanges stages `i` and `i + 1`. Legal only when block `i`'s event does
/// not feed block `i + 1`; the two blocks then trade places, later stages
/// and the relation see the two stage wires renamed.
pub fn switch(f: &Factorization, i: usize) -> Result<Factorization, Error> {
    let (m, k) = (f.m, f.k());
    if i + 1 >= k {
        return Err(Error::Malformed(format!(
            "switch position {} needs two stages",
            i
        )));
    }
    if f.blocks[i + 1].contains(&(m + i)) {
        return Err(Error::DependentBlocks { index: i });
    }
    let mut blocks = f.blocks.clone();
    blocks.swap(i, i + 1);
    let t = Transposition::new(m + k, m + i);
    for b in blocks.iter_mut().skip(i + 2) {
        let lo = b.remove(&(m + i));
        let hi = b.remove(&(m + i + 1));
        if lo {
            b.insert(m + i + 1);
        }
        if hi {
            b.insert(m + i);
        }
    }
    let renamed: Vec<(usize, usize)> = f.rel.iter().map(|(a, j)| (t.apply(a), j)).collect();
    let rel = Relation::new(m + k, f.n, &renamed)?;
    Ok(Factorization {
        m,
        n: f.n,
        blocks,
        rel,
    })
}

/// Renders a factorization as a term: one block combinator per stage, then
/// the final relation. Interprets to the composed morphism.
pub fn fact_to_term(f: &Factorization) -> Term {
    let mut stages = Vec::with_capacity(f.k() + 1);
    for (j, b) in f.blocks.iter().enumerate() {
        let inputs: Vec<usize> = b.iter().copied().collect();
        stages.push(x_block_term(f.m + j, &inputs));
    }
    stages.push(rel_to_term(&f.rel));
    seq_all(stages).expect("stage arities chain")
}

// Copying tree 1 -> c, fanning out in increasing index order.
fn delta_fan(c: usize) -> Term {
    match c {
        0 => Term::gen(Generator::Eps),
        1 => Term::id(1),
        _ => Term::seq(
            Term::gen(Generator::Delta),
            Term::par(Term::id(1), delta_fan(c - 1)),
        )
        .expect("fan arities chain"),
    }
}

// Collecting tree c -> 1, merging in increasing index order.
fn mu_fan(c: usize) -> Term {
    match c {
        0 => Term::gen(Generator::Eta),
        1 => Term::id(1),
        _ => Term::seq(
            Term::par(Term::id(1), mu_fan(c - 1)),
            Term::gen(Generator::Mu),
        )
        .expect("fan arities chain"),
    }
}

/// Renders a relation as a term without the internal-event generator: each
/// input fans out one copy per image element, the copies are routed into
/// output-major order with the minimal number of crossings, and each output
/// collects its copies. Interprets to the relation's embedding.
pub fn rel_to_term(r: &Relation) -> Term {
    let (m, n) = (r.m(), r.n());
    let mut fans = Vec::with_capacity(m);
    let mut wires: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        let image: Vec<usize> = (0..n).filter(|&j| r.contains(i, j)).collect();
        for &j in &image {
            wires.push((i, j));
        }
        fans.push(delta_fan(image.len()));
    }
    let w = wires.len();
    // target[p]: final position of the wire currently at p, sorting the
    // carried (input, output) pairs into output-major order.
    let mut target: Vec<usize> = vec![0; w];
    let mut by_output: Vec<usize> = (0..w).collect();
    by_output.sort_by_key(|&p| (wires[p].1, wires[p].0));
    for (rank, &p) in by_output.iter().enumerate() {
        target[p] = rank;
    }
    let mut stages = vec![par_all(fans)];
    loop {
        let mut swapped = false;
        for q in 0..w.saturating_sub(1) {
            if target[q] > target[q + 1] {
                stages.push(cross_at(w - 2, q));
                target.swap(q, q + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let mut collects = Vec::with_capacity(n);
    for j in 0..n {
        let c = (0..m).filter(|&i| r.contains(i, j)).count();
        collects.push(mu_fan(c));
    }
    stages.push(par_all(collects));
    seq_all(stages).expect("routing arities chain")
}

/// A deterministic term denoting `f`: relabel into canonical form, schedule
/// the internal events by the least linear extension, factor, and render.
/// Isomorphic inputs yield structurally equal terms.
pub fn canonical_term(f: &PosetMorphism) -> Result<Term, Error> {
    let g = canonical_form(f)?;
    let x = lex_least_linearization(&g);
    let fact = factorize(&g, &x)?;
    Ok(fact_to_term(&fact))
}
