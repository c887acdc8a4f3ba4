//! Graphviz export of a morphism's event order.
//!
//! Only covering pairs are drawn. Sources sit on the bottom rank and
//! targets on the top (`rankdir=BT`), each laid out left to right by
//! index; interface events are open circles, internal events filled.
//! Everything is emitted in sorted order, so the output is byte-stable.

use poalgebra::morphism::PosetMorphism;

use std::fmt::Write as _;

fn name(f: &PosetMorphism, id: usize) -> String {
    let (m, n) = (f.m(), f.n());
    if id < m {
        format!("s{}", id)
    } else if id < m + n {
        format!("t{}", id - m)
    } else {
        format!("i{}", id - m - n)
    }
}

pub fn to_dot(f: &PosetMorphism) -> String {
    let (m, n, k) = (f.m(), f.n(), f.internal_count());
    let mut out = String::from("digraph {\n  rankdir=BT;\n  node [shape=circle];\n");
    for j in 0..m {
        writeln!(out, "  s{} [label=\"s{}\"];", j, j).unwrap();
    }
    for j in 0..n {
        writeln!(out, "  t{} [label=\"t{}\"];", j, j).unwrap();
    }
    for j in 0..k {
        writeln!(out, "  i{} [label=\"i{}\", style=filled];", j, j).unwrap();
    }
    if m > 0 {
        out.push_str("  { rank=min;");
        for j in 0..m {
            write!(out, " s{};", j).unwrap();
        }
        out.push_str(" }\n");
    }
    if n > 0 {
        out.push_str("  { rank=max;");
        for j in 0..n {
            write!(out, " t{};", j).unwrap();
        }
        out.push_str(" }\n");
    }
    // Invisible chains keep each interface in index order left to right.
    for j in 1..m {
        writeln!(out, "  s{} -> s{} [style=invis];", j - 1, j).unwrap();
    }
    for j in 1..n {
        writeln!(out, "  t{} -> t{} [style=invis];", j - 1, j).unwrap();
    }
    for (a, b) in f.order().hasse_pairs() {
        writeln!(out, "  {} -> {};", name(f, a), name(f, b)).unwrap();
    }
    out.push_str("}\n");
    out
}
