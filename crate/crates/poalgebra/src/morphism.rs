//! Posets with marked input and output interfaces, and their category.
//!
//! A morphism `m -> n` is a finite poset together with `m` distinguished
//! minimal events (the sources) and `n` distinguished maximal events (the
//! targets), all pairwise distinct. Events are laid out in a fixed order:
//!
//! * sources `0..m`, in interface order;
//! * targets `m..m+n`, in interface order;
//! * internal events `m+n..m+n+k`.
//!
//! Two morphisms are equal when some order isomorphism matches them up while
//! fixing every source and target position; [`PosetMorphism::iso_eq`] decides
//! that and produces the witness. Sequential composition glues target `j` of
//! the left operand onto source `j` of the right, closes the order, then
//! deletes the `n` glued events, so interfaces meet only through the order
//! they induce.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::poset::Poset;

/// A finite poset with marked source and target interfaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetMorphism {
    m: usize,
    n: usize,
    order: Poset,
}

impl PosetMorphism {
    /// Builds a morphism from generating pairs over the fixed event layout
    /// (sources `0..m`, targets `m..m+n`, internals `m+n..m+n+internals`).
    ///
    /// The pairs are transitively closed; the result is rejected if closure
    /// forces a cycle, relates anything below a source, or relates anything
    /// above a target.
    pub fn from_parts(
        m: usize,
        n: usize,
        internals: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, Error> {
        let order = Poset::close(m + n + internals, pairs)?;
        let f = PosetMorphism { m, n, order };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), Error> {
        for i in 0..self.m {
            if !self.order.is_minimal(i) {
                return Err(Error::Malformed(format!("source {i} is not minimal")));
            }
        }
        for j in 0..self.n {
            if !self.order.is_maximal(self.m + j) {
                return Err(Error::Malformed(format!("target {j} is not maximal")));
            }
        }
        Ok(())
    }

    /// Internal constructor for operations that preserve the invariants.
    fn from_closed(m: usize, n: usize, order: Poset) -> Self {
        let f = PosetMorphism { m, n, order };
        debug_assert!(f.order.is_closed());
        debug_assert!(f.validate().is_ok());
        f
    }

    /// The identity on `n`: one two-event chain `s_i < t_i` per interface
    /// position, nothing else comparable.
    pub fn identity(n: usize) -> Self {
        let mut order = Poset::discrete(2 * n);
        for i in 0..n {
            order.set_lt(i, n + i);
        }
        PosetMorphism::from_closed(n, n, order)
    }

    /// The interface swap `a + b -> b + a`: source `i < a` feeds target
    /// `b + i`, source `a + i` feeds target `i`.
    pub fn symmetry(a: usize, b: usize) -> Self {
        let m = a + b;
        let mut order = Poset::discrete(2 * m);
        for i in 0..a {
            order.set_lt(i, m + b + i);
        }
        for i in 0..b {
            order.set_lt(a + i, m + i);
        }
        PosetMorphism::from_closed(m, m, order)
    }

    /// Source arity.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Target arity.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of events.
    pub fn events(&self) -> usize {
        self.order.len()
    }

    /// Number of internal (non-interface) events.
    pub fn internal_count(&self) -> usize {
        self.order.len() - self.m - self.n
    }

    /// Event id of source `i`.
    pub fn src(&self, i: usize) -> usize {
        debug_assert!(i < self.m);
        i
    }

    /// Event id of target `j`.
    pub fn tgt(&self, j: usize) -> usize {
        debug_assert!(j < self.n);
        self.m + j
    }

    /// Event id of internal event `x` (in layout order).
    pub fn internal(&self, x: usize) -> usize {
        debug_assert!(x < self.internal_count());
        self.m + self.n + x
    }

    /// Event ids of all internal events, in layout order.
    pub fn internal_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.m + self.n..self.order.len()
    }

    pub fn is_internal_event(&self, e: usize) -> bool {
        e >= self.m + self.n && e < self.order.len()
    }

    /// The underlying strict order.
    pub fn order(&self) -> &Poset {
        &self.order
    }

    /// Is event `a` strictly below event `b`?
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.order.lt(a, b)
    }

    /// Sequential composition: `self` then `g`.
    ///
    /// Target `j` of `self` is glued onto source `j` of `g`, the union order
    /// is closed, and the glued interface events are deleted.
    pub fn compose(&self, g: &PosetMorphism) -> Result<PosetMorphism, Error> {
        if self.n != g.m {
            return Err(Error::Composition { cod: self.n, dom: g.m });
        }
        let n = self.n;
        let ef = self.events();
        // Scratch ids: self's events keep their ids; g's source j becomes
        // self's target m + j; every other g event shifts up past self.
        let map_g = |e: usize| if e < n { self.m + e } else { ef + (e - n) };
        let total = ef + g.events() - n;
        let mut pairs = self.order.pairs();
        for (a, b) in g.order.pairs() {
            pairs.push((map_g(a), map_g(b)));
        }
        // Glued flow only ever points from self's side to g's side, so the
        // closure cannot cycle.
        let scratch = Poset::close(total, &pairs).expect("composition order is acyclic");
        let mut keep: Vec<usize> = (0..self.m).collect();
        keep.extend((0..g.n).map(|j| ef + j));
        keep.extend(self.m + n..ef);
        keep.extend(ef + g.n..total);
        Ok(PosetMorphism::from_closed(self.m, g.n, scratch.restrict(&keep)))
    }

    /// Parallel composition: disjoint union, `self` on the left.
    pub fn tensor(&self, g: &PosetMorphism) -> PosetMorphism {
        let m = self.m + g.m;
        let n = self.n + g.n;
        let kf = self.internal_count();
        let map_f = |e: usize| {
            if e < self.m {
                e
            } else if e < self.m + self.n {
                m + (e - self.m)
            } else {
                m + n + (e - self.m - self.n)
            }
        };
        let map_g = |e: usize| {
            if e < g.m {
                self.m + e
            } else if e < g.m + g.n {
                m + self.n + (e - g.m)
            } else {
                m + n + kf + (e - g.m - g.n)
            }
        };
        let mut order = Poset::discrete(self.events() + g.events());
        for (a, b) in self.order.pairs() {
            order.set_lt(map_f(a), map_f(b));
        }
        for (a, b) in g.order.pairs() {
            order.set_lt(map_g(a), map_g(b));
        }
        PosetMorphism::from_closed(m, n, order)
    }

    /// The dual morphism `n -> m`: same events, order reversed, interfaces
    /// exchanged positionwise.
    pub fn dual(&self) -> PosetMorphism {
        let map = |e: usize| {
            if e < self.m {
                self.n + e
            } else if e < self.m + self.n {
                e - self.m
            } else {
                e
            }
        };
        let mut order = Poset::discrete(self.events());
        for (a, b) in self.order.pairs() {
            order.set_lt(map(b), map(a));
        }
        PosetMorphism::from_closed(self.n, self.m, order)
    }

    /// Decides isomorphism over fixed interfaces and returns the witness
    /// event map (`map[e]` is the event of `other` matching event `e`).
    ///
    /// Interface events must correspond positionally, so the search only
    /// permutes internal events, pruned by their interface footprints.
    pub fn iso_eq(&self, other: &PosetMorphism) -> Option<Vec<usize>> {
        if self.m != other.m || self.n != other.n || self.events() != other.events() {
            return None;
        }
        for i in 0..self.m {
            for j in 0..self.n {
                if self.order.lt(i, self.m + j) != other.order.lt(i, self.m + j) {
                    return None;
                }
            }
        }
        let ext = self.m + self.n;
        let k = self.internal_count();
        let fps: Vec<Footprint> = (0..k).map(|x| Footprint::of(self, ext + x)).collect();
        let fpo: Vec<Footprint> = (0..k).map(|y| Footprint::of(other, ext + y)).collect();
        {
            let mut a = fps.clone();
            let mut b = fpo.clone();
            a.sort();
            b.sort();
            if a != b {
                return None;
            }
        }
        let mut asg: Vec<usize> = vec![usize::MAX; k];
        let mut used = vec![false; k];
        if !assign_internals(self, other, &fps, &fpo, &mut asg, &mut used, 0) {
            return None;
        }
        let mut map: Vec<usize> = (0..ext).collect();
        map.extend(asg.iter().map(|&y| ext + y));
        Some(map)
    }
}

/// Interface footprint of an internal event: which sources lie below it,
/// which targets lie above it, and how many internals sit on either side.
/// Any isomorphism over fixed interfaces preserves all four.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Footprint {
    sources_below: Vec<usize>,
    targets_above: Vec<usize>,
    internals_below: usize,
    internals_above: usize,
}

impl Footprint {
    fn of(f: &PosetMorphism, e: usize) -> Footprint {
        Footprint {
            sources_below: (0..f.m).filter(|&i| f.order.lt(i, e)).collect(),
            targets_above: (0..f.n).filter(|&j| f.order.lt(e, f.m + j)).collect(),
            internals_below: f.internal_ids().filter(|&x| f.order.lt(x, e)).count(),
            internals_above: f.internal_ids().filter(|&x| f.order.lt(e, x)).count(),
        }
    }
}

fn assign_internals(
    f: &PosetMorphism,
    g: &PosetMorphism,
    fps: &[Footprint],
    fpo: &[Footprint],
    asg: &mut [usize],
    used: &mut [bool],
    x: usize,
) -> bool {
    let k = asg.len();
    if x == k {
        return true;
    }
    let ext = f.m() + f.n();
    for y in 0..k {
        if used[y] || fps[x] != fpo[y] {
            continue;
        }
        let consistent = (0..x).all(|x2| {
            let y2 = asg[x2];
            f.lt(ext + x, ext + x2) == g.lt(ext + y, ext + y2)
                && f.lt(ext + x2, ext + x) == g.lt(ext + y2, ext + y)
        });
        if !consistent {
            continue;
        }
        asg[x] = y;
        used[y] = true;
        if assign_internals(f, g, fps, fpo, asg, used, x + 1) {
            return true;
        }
        used[y] = false;
    }
    false
}
