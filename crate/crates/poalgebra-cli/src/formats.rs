//! Line-oriented text formats for morphisms, relations, and staged
//! factorizations.
//!
//! Shared conventions: one directive per line, `#` starts a comment (whole
//! line or trailing), blank lines are skipped. Events are named `s<j>`,
//! `t<j>`, and `i<j>` for sources, targets, and internals. Writers emit
//! pairs in sorted order, so printing is byte-stable and `parse(print(x))`
//! restores `x` exactly.

use poalgebra::factor::Factorization;
use poalgebra::morphism::PosetMorphism;
use poalgebra::relation::Relation;
use poalgebra::Error;

use std::collections::BTreeSet;
use std::fmt::Write as _;

fn malformed(line_no: usize, msg: impl AsRef<str>) -> Error {
    Error::Malformed(format!("line {}: {}", line_no, msg.as_ref()))
}

/// Directive lines (1-based line number, whitespace-split fields), with
/// comments and blank lines dropped.
fn directives(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, line)| {
            let body = line.split('#').next().unwrap_or("");
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.is_empty() {
                None
            } else {
                Some((idx + 1, fields))
            }
        })
        .collect()
}

fn parse_count(line_no: usize, field: &str, what: &str) -> Result<usize, Error> {
    field
        .parse::<usize>()
        .map_err(|_| malformed(line_no, format!("{} must be a number, got `{}`", what, field)))
}

/// The name of event `id` in a morphism with `m` sources and `n` targets.
fn event_name(m: usize, n: usize, id: usize) -> String {
    if id < m {
        format!("s{}", id)
    } else if id < m + n {
        format!("t{}", id - m)
    } else {
        format!("i{}", id - m - n)
    }
}

fn event_id(m: usize, n: usize, k: usize, name: &str, line_no: usize) -> Result<usize, Error> {
    let (kind, bound, base) = match name.chars().next() {
        Some('s') => ("source", m, 0),
        Some('t') => ("target", n, m),
        Some('i') => ("internal event", k, m + n),
        _ => return Err(malformed(line_no, format!("unknown event name `{}`", name))),
    };
    let idx: usize = name[1..]
        .parse()
        .map_err(|_| malformed(line_no, format!("unknown event name `{}`", name)))?;
    if idx >= bound {
        return Err(malformed(
            line_no,
            format!("{} `{}` is out of range (bound {})", kind, name, bound),
        ));
    }
    Ok(base + idx)
}

/// Reads `P <m> <n> <k>` followed by `< <a> <b>` order pairs; the order is
/// closed transitively and validated by construction.
pub fn parse_poset(text: &str) -> Result<PosetMorphism, Error> {
    let lines = directives(text);
    let Some(((first_no, head), rest)) = lines.split_first().map(|(h, r)| (h.clone(), r)) else {
        return Err(Error::Malformed(String::from("empty input, expected `P <m> <n> <k>`")));
    };
    if head.len() != 4 || head[0] != "P" {
        return Err(malformed(first_no, "expected `P <m> <n> <k>`"));
    }
    let m = parse_count(first_no, head[1], "source arity")?;
    let n = parse_count(first_no, head[2], "target arity")?;
    let k = parse_count(first_no, head[3], "internal event count")?;

    let mut pairs = Vec::new();
    for (line_no, fields) in rest {
        if fields.len() != 3 || fields[0] != "<" {
            return Err(malformed(*line_no, "expected `< <a> <b>`"));
        }
        let a = event_id(m, n, k, fields[1], *line_no)?;
        let b = event_id(m, n, k, fields[2], *line_no)?;
        pairs.push((a, b));
    }
    PosetMorphism::from_parts(m, n, k, &pairs)
}

/// Prints the covering pairs only; the loader restores the closure.
pub fn print_poset(f: &PosetMorphism) -> String {
    let (m, n) = (f.m(), f.n());
    let mut out = format!("P {} {} {}\n", m, n, f.internal_count());
    for (a, b) in f.order().hasse_pairs() {
        writeln!(out, "< {} {}", event_name(m, n, a), event_name(m, n, b)).unwrap();
    }
    out
}

/// Reads `R <m> <n>` followed by bare `<i> <j>` pair lines.
pub fn parse_relation(text: &str) -> Result<Relation, Error> {
    let lines = directives(text);
    let Some(((first_no, head), rest)) = lines.split_first().map(|(h, r)| (h.clone(), r)) else {
        return Err(Error::Malformed(String::from("empty input, expected `R <m> <n>`")));
    };
    if head.len() != 3 || head[0] != "R" {
        return Err(malformed(first_no, "expected `R <m> <n>`"));
    }
    let m = parse_count(first_no, head[1], "source arity")?;
    let n = parse_count(first_no, head[2], "target arity")?;
    let mut pairs = Vec::new();
    for (line_no, fields) in rest {
        if fields.len() != 2 {
            return Err(malformed(*line_no, "expected `<i> <j>`"));
        }
        let i = parse_count(*line_no, fields[0], "source index")?;
        let j = parse_count(*line_no, fields[1], "target index")?;
        if i >= m || j >= n {
            return Err(malformed(*line_no, format!("pair ({}, {}) is out of range", i, j)));
        }
        pairs.push((i, j));
    }
    Relation::new(m, n, &pairs)
}

/// Reads `F <m> <k> <n>`, then one `I <j> <wires…>` line per stage in
/// order, then `R <i> <j>` relation lines.
pub fn parse_factorization(text: &str) -> Result<Factorization, Error> {
    let lines = directives(text);
    let Some(((first_no, head), rest)) = lines.split_first().map(|(h, r)| (h.clone(), r)) else {
        return Err(Error::Malformed(String::from("empty input, expected `F <m> <k> <n>`")));
    };
    if head.len() != 4 || head[0] != "F" {
        return Err(malformed(first_no, "expected `F <m> <k> <n>`"));
    }
    let m = parse_count(first_no, head[1], "source arity")?;
    let k = parse_count(first_no, head[2], "stage count")?;
    let n = parse_count(first_no, head[3], "target arity")?;

    let mut blocks: Vec<BTreeSet<usize>> = Vec::with_capacity(k);
    let mut pairs = Vec::new();
    for (line_no, fields) in rest {
        match fields[0] {
            "I" => {
                if pairs.is_empty() && blocks.len() < k {
                    let j = parse_count(*line_no, fields[1], "stage index")?;
                    if j != blocks.len() {
                        return Err(malformed(
                            *line_no,
                            format!("stage {} listed where stage {} was expected", j, blocks.len()),
                        ));
                    }
                    let mut wires = BTreeSet::new();
                    for field in &fields[2..] {
                        wires.insert(parse_count(*line_no, field, "wire index")?);
                    }
                    blocks.push(wires);
                } else {
                    return Err(malformed(*line_no, "stage line after the relation or past the stage count"));
                }
            }
            "R" => {
                if fields.len() != 3 {
                    return Err(malformed(*line_no, "expected `R <i> <j>`"));
                }
                let i = parse_count(*line_no, fields[1], "source index")?;
                let j = parse_count(*line_no, fields[2], "target index")?;
                pairs.push((i, j));
            }
            other => {
                return Err(malformed(*line_no, format!("unknown directive `{}`", other)));
            }
        }
    }
    if blocks.len() != k {
        return Err(Error::Malformed(format!(
            "{} stages declared, {} listed",
            k,
            blocks.len()
        )));
    }
    let rel = Relation::new(m + k, n, &pairs)?;
    Factorization::new(m, n, blocks, rel)
}

pub fn print_factorization(f: &Factorization) -> String {
    let mut out = format!("F {} {} {}\n", f.m, f.k(), f.n);
    for (j, block) in f.blocks.iter().enumerate() {
        write!(out, "I {}", j).unwrap();
        for wire in block {
            write!(out, " {}", wire).unwrap();
        }
        out.push('\n');
    }
    for (i, j) in f.rel.iter() {
        writeln!(out, "R {} {}", i, j).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_to_three() -> PosetMorphism {
        PosetMorphism::from_parts(2, 3, 3, &[(0, 5), (5, 2), (0, 6), (7, 4)]).unwrap()
    }

    #[test]
    fn poset_print_parse_round_trip() {
        let f = two_to_three();
        let text = print_poset(&f);
        assert_eq!(parse_poset(&text).unwrap(), f);
        // Printing is a fixpoint.
        assert_eq!(print_poset(&parse_poset(&text).unwrap()), text);
    }

    #[test]
    fn poset_text_uses_named_events_and_comments() {
        let text = "# a figure\nP 2 3 3\n< s0 i0   # c\n< i0 t0\n< s0 i1\n< i2 t2\n";
        let f = parse_poset(text).unwrap();
        assert!(f.iso_eq(&two_to_three()).is_some());
    }

    #[test]
    fn poset_rejections_name_the_line() {
        let bad = parse_poset("P 1 1 0\n< s0 i0\n");
        assert!(matches!(bad, Err(Error::Malformed(msg)) if msg.contains("line 2")));
        let bad = parse_poset("P 1 1 0\n< t0 s0\n");
        assert!(bad.is_err(), "a target above a source is no order");
    }

    #[test]
    fn relation_pairs_parse_bare() {
        let r = parse_relation("R 4 3\n0 0\n0 1   # fan-out\n0 2\n2 0\n").unwrap();
        assert_eq!(r, Relation::new(4, 3, &[(0, 0), (0, 1), (0, 2), (2, 0)]).unwrap());
        assert!(parse_relation("R 2 2\n2 0\n").is_err());
    }

    #[test]
    fn factorization_print_parse_round_trip() {
        let e = PosetMorphism::from_parts(
            1,
            2,
            4,
            &[(0, 3), (3, 4), (3, 5), (4, 6), (4, 2), (5, 2), (6, 1)],
        )
        .unwrap();
        let fact = poalgebra::factor::factorize(&e, &[0, 1, 2, 3]).unwrap();
        let text = print_factorization(&fact);
        assert_eq!(parse_factorization(&text).unwrap(), fact);
        assert!(text.starts_with("F 1 4 2\nI 0 0\nI 1 0 1\nI 2 0 1\nI 3 0 1 2\n"));
    }

    #[test]
    fn factorization_stage_order_is_checked() {
        let bad = parse_factorization("F 0 2 0\nI 1\nI 0\n");
        assert!(matches!(bad, Err(Error::Malformed(msg)) if msg.contains("stage 1")));
    }
}
