//! The rewrite rules of the presentation.
//!
//! Twenty-six oriented rules between parallel terms: the commutative
//! monoid and cocommutative comonoid laws on one wire, the bialgebra square
//! with its unit and counit compatibilities, the collapse of
//! split-then-merge, the threading law for the internal event,
//! creation/discard cancellation, the symmetry laws, and the naturality of
//! the crossing against every other generator. Each rule carries a stable
//! name and a group tag; the set is data, so the matcher and the
//! verification suites stay generic over it.

use alloc::vec::Vec;

use crate::term::{parse, Term};

/// Which family a rule belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleGroup {
    /// Unit, associativity, commutativity of the merge.
    Monoid,
    /// Counit, coassociativity, cocommutativity of the split.
    Comonoid,
    /// Merge against split, collapse, threading, cancellation.
    Mixed,
    /// The crossing is a self-inverse braiding.
    Symmetry,
    /// The crossing commutes past every generator.
    Naturality,
}

/// An oriented rewrite rule between two parallel terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: &'static str,
    pub group: RuleGroup,
    pub lhs: Term,
    pub rhs: Term,
}

/// The rule table: `(name, group, lhs, rhs)`.
const TABLE: &[(&str, RuleGroup, &str, &str)] = &[
    // Commutative monoid on one wire.
    ("unit-l", RuleGroup::Monoid, "(eta * id1) ; mu", "id1"),
    ("unit-r", RuleGroup::Monoid, "(id1 * eta) ; mu", "id1"),
    ("assoc", RuleGroup::Monoid, "(mu * id1) ; mu", "(id1 * mu) ; mu"),
    ("comm", RuleGroup::Monoid, "gamma ; mu", "mu"),
    // Cocommutative comonoid on one wire.
    ("counit-l", RuleGroup::Comonoid, "delta ; (eps * id1)", "id1"),
    ("counit-r", RuleGroup::Comonoid, "delta ; (id1 * eps)", "id1"),
    ("coassoc", RuleGroup::Comonoid, "delta ; (delta * id1)", "delta ; (id1 * delta)"),
    ("cocomm", RuleGroup::Comonoid, "delta ; gamma", "delta"),
    // The two structures interact as a bialgebra: merge then split is
    // splitting first and merging pairwise, a created event splits into two
    // created events, a merged event is discarded by discarding both
    // halves, and creation followed by discard cancels. On top of that,
    // split-then-merge collapses and the internal event threads through.
    (
        "bialg",
        RuleGroup::Mixed,
        "mu ; delta",
        "(delta * delta) ; (id1 * gamma * id1) ; (mu * mu)",
    ),
    ("eta-delta", RuleGroup::Mixed, "eta ; delta", "eta * eta"),
    ("mu-eps", RuleGroup::Mixed, "mu ; eps", "eps * eps"),
    ("eta-eps", RuleGroup::Mixed, "eta ; eps", "id0"),
    ("qual", RuleGroup::Mixed, "delta ; mu", "id1"),
    ("trans", RuleGroup::Mixed, "delta ; (id1 * sigma) ; mu", "sigma"),
    // The crossing squares to the identity and satisfies the braid law.
    ("inv", RuleGroup::Symmetry, "gamma ; gamma", "id2"),
    (
        "yang-baxter",
        RuleGroup::Symmetry,
        "(gamma * id1) ; (id1 * gamma) ; (gamma * id1)",
        "(id1 * gamma) ; (gamma * id1) ; (id1 * gamma)",
    ),
    // Naturality of the crossing against each generator.
    ("nat-eta-l", RuleGroup::Naturality, "(eta * id1) ; gamma", "id1 * eta"),
    ("nat-eta-r", RuleGroup::Naturality, "eta * id1", "(id1 * eta) ; gamma"),
    ("nat-eps-l", RuleGroup::Naturality, "eps * id1", "gamma ; (id1 * eps)"),
    ("nat-eps-r", RuleGroup::Naturality, "gamma ; (eps * id1)", "id1 * eps"),
    (
        "nat-mu-l",
        RuleGroup::Naturality,
        "(mu * id1) ; gamma",
        "(id1 * gamma) ; (gamma * id1) ; (id1 * mu)",
    ),
    (
        "nat-mu-r",
        RuleGroup::Naturality,
        "(gamma * id1) ; (id1 * gamma) ; (mu * id1)",
        "(id1 * mu) ; gamma",
    ),
    (
        "nat-delta-l",
        RuleGroup::Naturality,
        "gamma ; (delta * id1)",
        "(id1 * delta) ; (gamma * id1) ; (id1 * gamma)",
    ),
    (
        "nat-delta-r",
        RuleGroup::Naturality,
        "(delta * id1) ; (id1 * gamma) ; (gamma * id1)",
        "gamma ; (id1 * delta)",
    ),
    ("nat-sigma-l", RuleGroup::Naturality, "(sigma * id1) ; gamma", "gamma ; (id1 * sigma)"),
    ("nat-sigma-r", RuleGroup::Naturality, "gamma ; (sigma * id1)", "(id1 * sigma) ; gamma"),
];

/// The full oriented rule set.
#[derive(Debug, Clone)]
pub struct RuleSet {
    rules: Vec<Rule>,
}

impl RuleSet {
    /// Builds the standard 26-rule set.
    pub fn standard() -> RuleSet {
        let rules = TABLE
            .iter()
            .map(|&(name, group, lhs, rhs)| Rule {
                name,
                group,
                lhs: parse(lhs).expect("rule sides parse"),
                rhs: parse(rhs).expect("rule sides parse"),
            })
            .collect();
        RuleSet { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn by_name(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }
}
