//! Desk-scale verification suites.
//!
//! Each suite machine-checks one leg of the presentation argument over an
//! exhaustively enumerated or seeded-random instance space and reports
//! structured pass/fail/inconclusive counts: soundness of the rule table,
//! fullness of the denotation through canonical terms, the bijection
//! between scheduled morphisms and transitive factorizations, coherence of
//! the switch move on both sides of the translation, and bounded-search
//! corroboration of faithfulness. Suites are pure and, for the sampled
//! one, deterministic in the seed.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::canon::canonical_key;
use crate::combinators::{cross_at, feed_last, x_block_term};
use crate::enumerate::hom_classes;
use crate::error::Error;
use crate::factor::{
    fact_compose, factorize, is_linearization, linearizations, switch, Factorization,
    Transposition,
};
use crate::interp::{interp, tp_equal};
use crate::morphism::PosetMorphism;
use crate::relation::Relation;
use crate::rewrite::{apply, connected, find_redexes_bidirectional, replay};
use crate::rule::RuleSet;
use crate::slice::{congruent, Slice};
use crate::term::{par_all, Generator, Term};

/// Bounds for morphism enumeration: total events, per-side arities, and an
/// optional cap on internal events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumSpec {
    pub max_events: usize,
    pub max_m: usize,
    pub max_n: usize,
    pub max_internals: Option<usize>,
}

impl EnumSpec {
    /// Everything with at most `max_events` events.
    pub fn events(max_events: usize) -> EnumSpec {
        EnumSpec {
            max_events,
            max_m: max_events,
            max_n: max_events,
            max_internals: None,
        }
    }

    pub fn with_arity(mut self, max_m: usize, max_n: usize) -> EnumSpec {
        self.max_m = max_m;
        self.max_n = max_n;
        self
    }
}

/// One representative per isomorphism class within the bounds, enumerated
/// deterministically.
pub fn enumerate_morphisms(spec: &EnumSpec) -> Result<Vec<PosetMorphism>, Error> {
    let mut out = Vec::new();
    for m in 0..=spec.max_m.min(spec.max_events) {
        for n in 0..=spec.max_n.min(spec.max_events - m) {
            let room = spec.max_events - m - n;
            let kmax = spec.max_internals.map_or(room, |b| b.min(room));
            out.extend(hom_classes(m, n, kmax)?);
        }
    }
    Ok(out)
}

/// Line-oriented outcome of one suite: a `SUITE` header with the counts and
/// one `FAIL` line per failed case.
#[derive(Debug, Clone)]
pub struct Report {
    pub name: String,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub failures: Vec<(String, String)>,
}

impl Report {
    pub fn new(name: &str) -> Report {
        Report {
            name: String::from(name),
            pass: 0,
            fail: 0,
            inconclusive: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> (String, String)) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            self.failures.push(case());
        }
    }

    fn undecided(&mut self) {
        self.inconclusive += 1;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SUITE {} pass={} fail={} inconclusive={}",
            self.name, self.pass, self.fail, self.inconclusive
        )?;
        for (case, detail) in &self.failures {
            writeln!(f, "FAIL {} {}", case, detail)?;
        }
        Ok(())
    }
}

/// Every rule of the standard set leaves the interpretation invariant,
/// also under every whiskering `id_a (x) - (x) id_b` with `a + b <= 2`.
pub fn suite_soundness() -> Report {
    let rules = RuleSet::standard();
    let mut report = Report::new("soundness");
    for rule in rules.rules() {
        for a in 0..=2usize {
            for b in 0..=2 - a {
                let lhs = par_all([Term::id(a), rule.lhs.clone(), Term::id(b)]);
                let rhs = par_all([Term::id(a), rule.rhs.clone(), Term::id(b)]);
                let ok = matches!(tp_equal(&lhs, &rhs), Ok(true));
                report.check(ok, || {
                    (
                        format!("{}+{}+{}", rule.name, a, b),
                        String::from("whiskered sides interpret differently"),
                    )
                });
            }
        }
    }
    report
}

/// The canonical term of every enumerated morphism denotes it.
pub fn suite_fullness(spec: &EnumSpec) -> Result<Report, Error> {
    let mut report = Report::new("fullness");
    for (idx, f) in enumerate_morphisms(spec)?.iter().enumerate() {
        let ok = match crate::factor::canonical_term(f) {
            Ok(t) => interp(&t).iso_eq(f).is_some(),
            Err(_) => false,
        };
        report.check(ok, || {
            (
                format!("full-{}to{}-{}", f.m(), f.n(), idx),
                String::from("canonical term does not denote the morphism"),
            )
        });
    }
    Ok(report)
}

/// Morphism-with-schedule pairs and transitive factorizations translate
/// back and forth without loss: factor-then-compose restores the morphism
/// and its schedule, compose-then-factor restores the factorization. The
/// reverse direction ranges over every stage shape with `m + k + n` at most
/// `spec.max_events`, ignoring the arity bounds.
pub fn suite_bijection(spec: &EnumSpec) -> Result<Report, Error> {
    let mut report = Report::new("bijection");
    for (idx, f) in enumerate_morphisms(spec)?.iter().enumerate() {
        for x in linearizations(f) {
            let fact = factorize(f, &x)?;
            let (g, induced) = fact_compose(&fact);
            let ok = fact.is_transitive()
                && g.iso_eq(f).is_some()
                && factorize(&g, &induced).ok().as_ref() == Some(&fact);
            report.check(ok, || {
                (
                    format!("bij-fwd-{}to{}-{}-{:?}", f.m(), f.n(), idx, x),
                    String::from("factor/compose round trip disagrees"),
                )
            });
        }
    }
    for fact in all_factorizations(spec.max_events) {
        if !fact.is_transitive() {
            continue;
        }
        let (g, induced) = fact_compose(&fact);
        let ok = factorize(&g, &induced).ok().as_ref() == Some(&fact);
        report.check(ok, || {
            (
                format!(
                    "bij-rev-{}-{}-{}-{:?}-{:?}",
                    fact.m,
                    fact.k(),
                    fact.n,
                    fact.blocks,
                    fact.rel
                ),
                String::from("compose/factor round trip disagrees"),
            )
        });
    }
    Ok(report)
}

// Every factorization shape with m + k + n <= total: all block input sets
// crossed with all closing relations.
fn all_factorizations(total: usize) -> Vec<Factorization> {
    let mut out = Vec::new();
    for m in 0..=total {
        for k in 0..=total - m {
            for n in 0..=total - m - k {
                let mut masks = vec![0u32; k];
                loop {
                    let blocks: Vec<BTreeSet<usize>> = masks
                        .iter()
                        .enumerate()
                        .map(|(j, &mask)| (0..m + j).filter(|&i| mask >> i & 1 == 1).collect())
                        .collect();
                    for rmask in 0..1u64 << ((m + k) * n) {
                        let pairs: Vec<(usize, usize)> = (0..(m + k) * n)
                            .filter(|&b| rmask >> b & 1 == 1)
                            .map(|b| (b / n, b % n))
                            .collect();
                        let rel = Relation::new(m + k, n, &pairs)
                            .expect("mask bits stay in range");
                        out.push(
                            Factorization::new(m, n, blocks.clone(), rel)
                                .expect("stage masks stay in range"),
                        );
                    }
                    let mut j = 0;
                    while j < k {
                        masks[j] += 1;
                        if masks[j] < 1 << (m + j) {
                            break;
                        }
                        masks[j] = 0;
                        j += 1;
                    }
                    if j == k {
                        break;
                    }
                }
            }
        }
    }
    out
}

/// Exchanging two adjacent independent stages commutes with refactoring
/// along the swapped schedule; dependent stages are rejected.
pub fn suite_switch(spec: &EnumSpec) -> Result<Report, Error> {
    let mut report = Report::new("switch");
    for (idx, f) in enumerate_morphisms(spec)?.iter().enumerate() {
        let k = f.internal_count();
        for x in linearizations(f) {
            let fact = factorize(f, &x)?;
            for i in 0..k.saturating_sub(1) {
                let a = f.internal(x[i]);
                let b = f.internal(x[i + 1]);
                let mut swapped = x.clone();
                swapped.swap(i, i + 1);
                let ok = if f.order().incomparable(a, b) {
                    switch(&fact, i).ok().as_ref() == Some(&factorize(f, &swapped)?)
                } else {
                    matches!(switch(&fact, i), Err(Error::DependentBlocks { .. }))
                        && !is_linearization(f, &swapped)
                };
                report.check(ok, || {
                    (
                        format!("switch-{}to{}-{}-{:?}@{}", f.m(), f.n(), idx, x, i),
                        String::from("switch disagrees with refactoring"),
                    )
                });
            }
        }
    }
    Ok(report)
}

/// The semantic identities the block combinators satisfy: the term half of
/// the switch argument.
pub fn suite_term_laws() -> Report {
    let mut report = Report::new("term-laws");
    term_side_laws(&mut report);
    report
}

fn seq(a: Term, b: Term) -> Term {
    Term::seq(a, b).expect("law sides chain")
}

// Semantic block laws, all sizes n <= 3: feeding commutes and collapses,
// stacked blocks over existing wires swap with a crossing, and a crossing
// slides past a block by renaming its inputs.
fn term_side_laws(report: &mut Report) {
    for n in 0..=3usize {
        for i in 0..n {
            for j in i + 1..n {
                let lhs = seq(feed_last(n, i), feed_last(n, j));
                let rhs = seq(feed_last(n, j), feed_last(n, i));
                report.check(matches!(tp_equal(&lhs, &rhs), Ok(true)), || {
                    (
                        format!("feed-comm-{}-{}-{}", n, i, j),
                        String::from("feeding order changes the interpretation"),
                    )
                });
            }
            let twice = seq(feed_last(n, i), feed_last(n, i));
            report.check(matches!(tp_equal(&twice, &feed_last(n, i)), Ok(true)), || {
                (
                    format!("feed-idem-{}-{}", n, i),
                    String::from("feeding twice changes the interpretation"),
                )
            });
        }
        for imask in 0..1u32 << n {
            let iset = mask_bits(imask, n);
            for jmask in 0..1u32 << n {
                let jset = mask_bits(jmask, n);
                let lhs = seq(x_block_term(n, &iset), x_block_term(n + 1, &jset));
                let rhs = seq(
                    seq(x_block_term(n, &jset), x_block_term(n + 1, &iset)),
                    cross_at(n, n),
                );
                report.check(matches!(tp_equal(&lhs, &rhs), Ok(true)), || {
                    (
                        format!("block-swap-{}-{}-{}", n, imask, jmask),
                        String::from("independent blocks do not swap"),
                    )
                });
            }
        }
        for i in 0..=n {
            let t = Transposition::new(n + 2, i);
            for mask in 0..1u32 << (n + 2) {
                let iset = mask_bits(mask, n + 2);
                let tset: Vec<usize> = iset.iter().map(|&v| t.apply(v)).collect();
                let lhs = seq(cross_at(n, i), x_block_term(n + 2, &iset));
                let rhs = seq(x_block_term(n + 2, &tset), cross_at(n + 1, i));
                report.check(matches!(tp_equal(&lhs, &rhs), Ok(true)), || {
                    (
                        format!("block-cross-{}-{}-{}", n, i, mask),
                        String::from("crossing does not slide past the block"),
                    )
                });
            }
        }
    }
}

fn mask_bits(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Samples parallel term pairs with equal interpretations and asks the
/// bounded bidirectional search for a derivation. Half the pairs come from
/// random rewrite walks (a derivation exists nearby by construction), half
/// from interpretation collisions among independently sampled terms. A
/// exhausted budget is inconclusive, not a failure; a failure is a search
/// outcome contradicting the interpretation. A tenth of the sample is
/// spent on semantically distinct pairs, where a found path would be such
/// a contradiction.
pub fn suite_faithful(sample: usize, budget: usize, seed: u64) -> Report {
    let rules = RuleSet::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("faithful");

    let walk_target = sample / 2;
    let mut walks = 0usize;
    while walks < walk_target {
        let a = random_term(&mut rng, 4, 4);
        let b = random_walk(&a, &rules, &mut rng, 3, 6);
        if congruent(&a, &b) {
            continue;
        }
        walks += 1;
        search_pair(&mut report, &rules, &a, &b, budget, "walk", walks);
    }

    let collision_target = sample - walk_target;
    let mut pool: BTreeMap<(usize, Vec<u8>), Vec<Term>> = BTreeMap::new();
    let mut collisions = 0usize;
    while collisions < collision_target {
        let t = random_term(&mut rng, 4, 3);
        let key = match canonical_key(&interp(&t)) {
            Ok(key) => (t.dom(), key),
            Err(_) => continue,
        };
        let group = pool.entry(key).or_default();
        if let Some(other) = group.iter().find(|o| !congruent(o, &t)) {
            let a = other.clone();
            collisions += 1;
            search_pair(&mut report, &rules, &a, &t, budget, "collision", collisions);
        }
        group.push(t);
    }

    // Distinct interpretations must stay unconnected; the search returning
    // a path here would contradict rule soundness.
    let mut negatives = 0usize;
    while negatives < sample / 10 {
        let a = random_term(&mut rng, 3, 3);
        let b = random_term(&mut rng, 3, 3);
        if a.dom() != b.dom() || a.cod() != b.cod() {
            continue;
        }
        if matches!(tp_equal(&a, &b), Ok(true)) {
            continue;
        }
        negatives += 1;
        let verdict = connected(&a, &b, &rules, budget);
        report.check(matches!(verdict, Ok(None)), || {
            (
                format!("distinct-{}", negatives),
                String::from("search connected semantically distinct terms"),
            )
        });
    }

    report
}

// One positive case: the pair interprets equally by construction, so a
// found path is validated by replay and an exhausted budget is recorded
// as inconclusive.
fn search_pair(
    report: &mut Report,
    rules: &RuleSet,
    a: &Term,
    b: &Term,
    budget: usize,
    kind: &str,
    idx: usize,
) {
    if !matches!(tp_equal(a, b), Ok(true)) {
        report.check(false, || {
            (
                format!("{}-{}", kind, idx),
                String::from("sampled pair does not interpret equally"),
            )
        });
        return;
    }
    match connected(a, b, rules, budget) {
        Ok(Some(path)) => {
            let ok = match replay(a, rules, &path) {
                Ok(end) => congruent(&end, b),
                Err(_) => false,
            };
            report.check(ok, || {
                (
                    format!("{}-{}", kind, idx),
                    String::from("found path does not replay to the target"),
                )
            });
        }
        Ok(None) => report.undecided(),
        Err(_) => report.check(false, || {
            (
                format!("{}-{}", kind, idx),
                String::from("search rejected a parallel pair"),
            )
        }),
    }
}

fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u32() as usize) % n
}

// A random well-formed slice list: repeatedly drop a generator at a random
// offset, keeping the width within bounds.
fn random_term(rng: &mut ChaCha8Rng, max_gens: usize, max_width: usize) -> Term {
    let dom = pick(rng, max_width + 1);
    let count = 1 + pick(rng, max_gens);
    let mut width = dom;
    let mut list = Vec::new();
    for _ in 0..count {
        let mut candidates = Vec::new();
        for g in Generator::ALL {
            if g.dom() <= width && width - g.dom() + g.cod() <= max_width {
                for left in 0..=width - g.dom() {
                    candidates.push((g, left));
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let (gen, left) = candidates[pick(rng, candidates.len())];
        let right = width - left - gen.dom();
        list.push(Slice { left, gen, right });
        width = width - gen.dom() + gen.cod();
    }
    crate::slice::term_from_slices(dom, &list)
}

// A short random rewrite walk from `t`, skipping steps that would exceed
// the generator budget.
fn random_walk(
    t: &Term,
    rules: &RuleSet,
    rng: &mut ChaCha8Rng,
    steps: usize,
    max_gens: usize,
) -> Term {
    let mut cur = t.clone();
    for _ in 0..steps {
        let redexes = find_redexes_bidirectional(&cur, rules);
        if redexes.is_empty() {
            break;
        }
        for _ in 0..8 {
            let redex = &redexes[pick(rng, redexes.len())];
            if let Ok(next) = apply(&cur, rules, redex) {
                if next.gen_count() <= max_gens {
                    cur = next;
                    break;
                }
            }
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
            #[test]
    fn soundness_suite_is_clean() {
        let report = suite_soundness();
        assert!(report.ok(), "{}", report);
        // 26 rules, 6 whiskerings each.
        assert_eq!(report.pass, 156);
        assert_eq!(report.inconclusive, 0);
    }

    #[test]
    fn tiny_fullness_and_bijection_and_switch() {
        let spec = EnumSpec::events(3);
        assert!(suite_fullness(&spec).unwrap().ok());
        assert!(suite_bijection(&spec).unwrap().ok());
        assert!(suite_switch(&spec).unwrap().ok());
        assert!(suite_term_laws().ok());
    }

    #[test]
    fn report_rendering_matches_the_line_format() {
        let mut report = Report::new("demo");
        report.check(true, || unreachable!());
        report.check(false, || {
            (String::from("case-1"), String::from("something broke"))
        });
        report.undecided();
        let text = format!("{}", report);
        assert_eq!(
            text,
            "SUITE demo pass=1 fail=1 inconclusive=1\nFAIL case-1 something broke\n"
        );
        assert!(!report.ok());
    }

    #[test]
    fn faithful_smoke_run_is_deterministic() {
        let a = suite_faithful(10, 2000, 7);
        let b = suite_faithful(10, 2000, 7);
        assert!(a.ok(), "{}", a);
        assert_eq!(a.pass, b.pass);
        assert_eq!(a.fail, b.fail);
        assert_eq!(a.inconclusive, b.inconclusive);
        assert_eq!(a.pass + a.inconclusive, 11);
    }

    #[test]
    fn enumeration_respects_bounds() {
        let spec = EnumSpec::events(4).with_arity(1, 1);
        let all = enumerate_morphisms(&spec).unwrap();
        assert!(all
            .iter()
            .all(|f| f.m() <= 1 && f.n() <= 1 && f.events() <= 4));
        let mut keys = BTreeSet::new();
        for f in &all {
            assert!(keys.insert(canonical_key(f).unwrap()));
        }
    }
}
