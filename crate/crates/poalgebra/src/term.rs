//! The term language: formal composites of six arity-typed generators.
//!
//! Terms are syntax trees over sequential composition (`;`, diagrammatic
//! order), parallel composition (`*`), identities `id<n>`, and the
//! generators `eta 0->1`, `mu 2->1`, `eps 1->0`, `delta 1->2`, `sigma 1->1`,
//! `gamma 2->2`. Arities are checked at construction, so a `Term` is always
//! well-typed. The printer emits exactly the grammar the parser reads, and
//! `parse(print(t))` returns `t` structurally.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// One of the six morphism generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    /// `eta: 0 -> 1`, an event from nowhere.
    Eta,
    /// `mu: 2 -> 1`, merge two interfaces.
    Mu,
    /// `eps: 1 -> 0`, discard an interface.
    Eps,
    /// `delta: 1 -> 2`, split an interface.
    Delta,
    /// `sigma: 1 -> 1`, a single strictly internal event.
    Sigma,
    /// `gamma: 2 -> 2`, the crossing.
    Gamma,
}

impl Generator {
    pub const ALL: [Generator; 6] =
        [Generator::Eta, Generator::Mu, Generator::Eps, Generator::Delta, Generator::Sigma, Generator::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Eta => "eta",
            Generator::Mu => "mu",
            Generator::Eps => "eps",
            Generator::Delta => "delta",
            Generator::Sigma => "sigma",
            Generator::Gamma => "gamma",
        }
    }

    pub fn by_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }

    /// Source arity.
    pub fn dom(self) -> usize {
        match self {
            Generator::Eta => 0,
            Generator::Mu | Generator::Gamma => 2,
            Generator::Eps | Generator::Delta | Generator::Sigma => 1,
        }
    }

    /// Target arity.
    pub fn cod(self) -> usize {
        match self {
            Generator::Eps => 0,
            Generator::Delta | Generator::Gamma => 2,
            Generator::Eta | Generator::Mu | Generator::Sigma => 1,
        }
    }
}

/// The signature of the theory: the generator names with their arities.
///
/// Names are unique; this is the single table the parser, printer, and term
/// enumeration agree on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    entries: Vec<(&'static str, usize, usize)>,
}

impl Signature {
    /// The fixed six-generator signature.
    pub fn standard() -> Signature {
        Signature {
            entries: Generator::ALL.iter().map(|g| (g.name(), g.dom(), g.cod())).collect(),
        }
    }

    pub fn entries(&self) -> &[(&'static str, usize, usize)] {
        &self.entries
    }

    pub fn arity(&self, name: &str) -> Option<(usize, usize)> {
        self.entries.iter().find(|e| e.0 == name).map(|e| (e.1, e.2))
    }
}

/// A well-typed term. Arities are fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    node: Node,
    dom: usize,
    cod: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Node {
    Gen(Generator),
    Id(usize),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(g: Generator) -> Term {
        Term { node: Node::Gen(g), dom: g.dom(), cod: g.cod() }
    }

    pub fn id(n: usize) -> Term {
        Term { node: Node::Id(n), dom: n, cod: n }
    }

    /// Sequential composite, `f` first (diagrammatic order).
    pub fn seq(f: Term, g: Term) -> Result<Term, Error> {
        if f.cod != g.dom {
            return Err(Error::Composition { cod: f.cod, dom: g.dom });
        }
        let (dom, cod) = (f.dom, g.cod);
        Ok(Term { node: Node::Seq(Box::new(f), Box::new(g)), dom, cod })
    }

    /// Parallel composite, `f` on the left.
    ///
    /// `id0` factors are absorbed and adjacent identities merge, so terms
    /// built through this constructor never carry unit padding.
    pub fn par(f: Term, g: Term) -> Term {
        if matches!(f.node, Node::Id(0)) {
            return g;
        }
        if matches!(g.node, Node::Id(0)) {
            return f;
        }
        if let (Node::Id(a), Node::Id(b)) = (&f.node, &g.node) {
            return Term::id(a + b);
        }
        let (dom, cod) = (f.dom + g.dom, f.cod + g.cod);
        Term { node: Node::Par(Box::new(f), Box::new(g)), dom, cod }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub(crate) fn node(&self) -> &Node {
        &self.node
    }

    /// Number of generator occurrences.
    pub fn gen_count(&self) -> usize {
        match &self.node {
            Node::Gen(_) => 1,
            Node::Id(_) => 0,
            Node::Seq(f, g) | Node::Par(f, g) => f.gen_count() + g.gen_count(),
        }
    }

    /// Does `sigma` occur anywhere in the term?
    pub fn mentions_sigma(&self) -> bool {
        match &self.node {
            Node::Gen(g) => *g == Generator::Sigma,
            Node::Id(_) => false,
            Node::Seq(f, g) | Node::Par(f, g) => f.mentions_sigma() || g.mentions_sigma(),
        }
    }
}

/// Parallel composite of several terms, left to right.
pub fn par_all(terms: impl IntoIterator<Item = Term>) -> Term {
    let mut it = terms.into_iter();
    let first = match it.next() {
        Some(t) => t,
        None => return Term::id(0),
    };
    it.fold(first, Term::par)
}

/// Sequential composite of several terms, left to right (diagrammatic).
pub fn seq_all(terms: impl IntoIterator<Item = Term>) -> Result<Term, Error> {
    let mut it = terms.into_iter();
    let first = it.next().ok_or_else(|| Error::Malformed(String::from("empty composite")))?;
    it.try_fold(first, Term::seq)
}

// Printing levels mirror the grammar: a Seq child in par position, or any
// composite in atom position, gets parentheses.
#[derive(Clone, Copy, PartialEq)]
enum Level {
    Seq,
    Par,
    Atom,
}

fn fmt_at(t: &Term, level: Level, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match (&t.node, level) {
        (Node::Seq(l, r), Level::Seq) => {
            fmt_at(l, Level::Seq, f)?;
            f.write_str(" ; ")?;
            fmt_at(r, Level::Par, f)
        }
        (Node::Par(l, r), Level::Seq | Level::Par) => {
            fmt_at(l, Level::Par, f)?;
            f.write_str(" * ")?;
            fmt_at(r, Level::Atom, f)
        }
        (Node::Gen(g), _) => f.write_str(g.name()),
        (Node::Id(n), _) => write!(f, "id{n}"),
        _ => {
            f.write_str("(")?;
            fmt_at(t, Level::Seq, f)?;
            f.write_str(")")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_at(self, Level::Seq, f)
    }
}

/// Parses the term grammar:
///
/// ```text
/// term := seq
/// seq  := par (";" par)*
/// par  := atom ("*" atom)*
/// atom := generator-name | "id" digits | "(" seq ")"
/// ```
///
/// Whitespace is insignificant. `;` and `*` associate to the left; `*` binds
/// tighter. Arity mismatches are reported at the offending `;`.
pub fn parse(input: &str) -> Result<Term, Error> {
    let mut p = Parser { s: input.as_bytes(), i: 0 };
    let t = p.seq()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { at: self.i, msg: String::from(msg) }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn seq(&mut self) -> Result<Term, Error> {
        let mut t = self.par()?;
        while self.peek() == Some(b';') {
            let at = self.i;
            self.i += 1;
            let r = self.par()?;
            t = Term::seq(t, r).map_err(|e| Error::Parse { at, msg: format!("{e}") })?;
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term, Error> {
        let mut t = self.atom()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            let r = self.atom()?;
            t = Term::par(t, r);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, Error> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let t = self.seq()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_lowercase() {
                    self.i += 1;
                }
                let word = core::str::from_utf8(&self.s[start..self.i]).unwrap();
                if word == "id" {
                    let dstart = self.i;
                    while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                        self.i += 1;
                    }
                    if self.i == dstart {
                        return Err(self.err("expected arity digits after 'id'"));
                    }
                    let digits = core::str::from_utf8(&self.s[dstart..self.i]).unwrap();
                    let n: usize = digits
                        .parse()
                        .map_err(|_| Error::Parse { at: dstart, msg: String::from("arity out of range") })?;
                    Ok(Term::id(n))
                } else if let Some(g) = Generator::by_name(word) {
                    Ok(Term::gen(g))
                } else {
                    Err(Error::Parse { at: start, msg: format!("unknown generator '{word}'") })
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}
