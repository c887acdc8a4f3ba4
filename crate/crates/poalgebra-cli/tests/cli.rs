//! End-to-end runs of the `poalgebra` binary: every subcommand, the
//! documented exit codes, and byte-stability of the printed formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poalgebra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is text")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Writes a fixture under the target-local temp dir and returns its path.
fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("poalgebra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// `1 -> 2` with a fork: the running example for the file commands.
const FORK: &str = "P 1 2 4\n< s0 i0\n< i0 i1\n< i0 i2\n< i1 i3\n< i1 t1\n< i2 t1\n< i3 t0\n";

#[test]
fn eq_answers_equal_distinct_and_rejects_non_parallel() {
    let out = run(&["eq", "(eta*id1);mu", "id1"]);
    assert_eq!(stdout(&out), "EQUAL\n");
    assert_eq!(code(&out), 0);

    let out = run(&["eq", "sigma", "id1"]);
    assert_eq!(stdout(&out), "DISTINCT\n");
    assert_eq!(code(&out), 0, "a definite answer is a success");

    let out = run(&["eq", "eta", "mu"]);
    assert_eq!(code(&out), 1, "arity mismatch is a domain error");
}

#[test]
fn interp_prints_the_poset_and_parse_normalizes() {
    let out = run(&["interp", "delta ; (sigma * sigma)"]);
    assert_eq!(stdout(&out), "P 1 2 2\n< s0 i0\n< s0 i1\n< i0 t0\n< i1 t1\n");

    let out = run(&["parse", "((eta))*id1"]);
    assert_eq!(stdout(&out), "eta * id1\n");
}

#[test]
fn interp_dot_draws_sigma_as_one_filled_event() {
    let out = run(&["interp", "sigma", "--dot"]);
    let dot = stdout(&out);
    assert_eq!(dot.matches("label=").count(), 3, "three events");
    assert_eq!(dot.matches("style=filled").count(), 1, "one internal");
    let covers = dot.lines().filter(|l| l.contains(" -> ") && !l.contains("invis")).count();
    assert_eq!(covers, 2);
    // Stability: a second run is byte-identical.
    assert_eq!(stdout(&run(&["interp", "sigma", "--dot"])), dot);
}

#[test]
fn dot_export_of_a_crossing_block() {
    // One event reading wires 0 and 2 of a 3-wire bus, plus the bus itself.
    let x = fixture(
        "x_block.poset",
        "P 3 4 1\n< s0 t0\n< s1 t1\n< s2 t2\n< s0 i0\n< s2 i0\n< i0 t3\n",
    );
    let dot = stdout(&run(&["dot", x.to_str().unwrap()]));
    assert_eq!(dot.matches("label=").count(), 8);
    assert_eq!(dot.matches("style=filled").count(), 1);
    let covers = dot.lines().filter(|l| l.contains(" -> ") && !l.contains("invis")).count();
    assert_eq!(covers, 6);
}

#[test]
fn compose_and_tensor_agree_with_the_library() {
    let fork = fixture("fork.poset", FORK);
    let swap = fixture("swap.poset", &stdout(&run(&["interp", "gamma"])));

    let out = run(&["compose", fork.to_str().unwrap(), swap.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let f = poalgebra::morphism::PosetMorphism::from_parts(
        1,
        2,
        4,
        &[(0, 3), (3, 4), (3, 5), (4, 6), (4, 2), (5, 2), (6, 1)],
    )
    .unwrap();
    let g = poalgebra::interp::interp(&poalgebra::term::parse("gamma").unwrap());
    let composed = f.compose(&g).unwrap();
    // The CLI's answer names the same class: feed it back through `canon`
    // and compare with the canonical term computed in process.
    let cli_poset = fixture("composed.poset", &stdout(&out));
    let canon_cli = stdout(&run(&["canon", cli_poset.to_str().unwrap()]));
    let canon_lib = poalgebra::factor::canonical_term(&composed).unwrap().to_string();
    assert_eq!(canon_cli.trim_end(), canon_lib);

    let out = run(&["tensor", swap.to_str().unwrap(), swap.to_str().unwrap()]);
    assert_eq!(stdout(&run(&["interp", "gamma * gamma"])), stdout(&out));
}

#[test]
fn factorize_stages_match_the_switch_example() {
    let fork = fixture("fork2.poset", FORK);
    let out = run(&["factorize", fork.to_str().unwrap()]);
    let staged = stdout(&out);
    assert!(staged.starts_with("F 1 4 2\nI 0 0\nI 1 0 1\nI 2 0 1\nI 3 0 1 2\n"), "{staged}");

    // An exchanged schedule renames the last stage's inputs.
    let out = run(&["factorize", fork.to_str().unwrap(), "--lin", "0,2,1,3"]);
    assert!(stdout(&out).contains("I 3 0 1 3\n"));

    // A non-linearization is refused.
    let out = run(&["factorize", fork.to_str().unwrap(), "--lin", "1,0,2,3"]);
    assert_eq!(code(&out), 1);

    let fact = fixture("fork.fact", &staged);
    let out = run(&["fact-compose", fact.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.ends_with("# induced 0 1 2 3\n"));
    // The glued poset reloads through the comment line and reproduces the
    // original class.
    let glued = fixture("glued.poset", &text);
    let canon_glued = stdout(&run(&["canon", glued.to_str().unwrap()]));
    let canon_fork = stdout(&run(&["canon", fork.to_str().unwrap()]));
    assert_eq!(canon_glued, canon_fork);
}

#[test]
fn rel2term_emits_a_sigma_free_term_for_the_relation() {
    let rel = fixture("embed.rel", "R 4 3\n0 0\n0 1\n0 2\n2 0\n");
    let out = run(&["rel2term", rel.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(!text.contains("sigma"));
    let term = poalgebra::term::parse(text.trim_end()).unwrap();
    let expected = poalgebra::relation::Relation::new(4, 3, &[(0, 0), (0, 1), (0, 2), (2, 0)])
        .unwrap()
        .to_poset();
    assert!(poalgebra::interp::interp(&term).iso_eq(&expected).is_some());
}

#[test]
fn canon_evaluates_back_to_the_same_class() {
    let fork = fixture("fork3.poset", FORK);
    let canon = stdout(&run(&["canon", fork.to_str().unwrap()]));
    // The canonical term evaluates back to the very class it was read from.
    let direct = poalgebra::morphism::PosetMorphism::from_parts(
        1,
        2,
        4,
        &[(0, 3), (3, 4), (3, 5), (4, 6), (4, 2), (5, 2), (6, 1)],
    )
    .unwrap();
    let value = poalgebra::interp::interp(&poalgebra::term::parse(canon.trim_end()).unwrap());
    assert!(value.iso_eq(&direct).is_some());
}

#[test]
fn enumerate_counts_classes_and_prints_loadable_blocks() {
    let out = run(&["enumerate", "--max-events", "3", "--max-m", "1", "--max-n", "1"]);
    let text = stdout(&out);
    let spec = poalgebra::harness::EnumSpec::events(3).with_arity(1, 1);
    let expected = poalgebra::harness::enumerate_morphisms(&spec).unwrap().len();
    assert_eq!(text.lines().last().unwrap(), format!("# classes {expected}"));
    assert_eq!(text.matches("P ").count(), expected);
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = run(&["verify", "--suite", "soundness"]);
    assert!(stdout(&out).starts_with("SUITE soundness pass=156 fail=0 inconclusive=0"));
    assert_eq!(code(&out), 0);

    let out = run(&["verify", "--suite", "term-laws"]);
    assert!(stdout(&out).starts_with("SUITE term-laws pass="));
    assert_eq!(code(&out), 0);

    let out = run(&["verify", "--suite", "faithful", "--sample", "10", "--seed", "7", "--budget", "2000"]);
    assert!(stdout(&out).starts_with("SUITE faithful pass=11 fail=0"));
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_and_domain_errors_are_told_apart() {
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["dot", "/nonexistent.poset"])), 1);
    let bad = fixture("bad.poset", "P 1 1 0\n< t0 s0\n");
    let out = run(&["dot", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stderr).unwrap().contains("not minimal"));
    assert_eq!(code(&run(&["parse", "eta ;; mu"])), 1);
}
