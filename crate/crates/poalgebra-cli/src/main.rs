//! Command-line front end for the poalgebra crate.
//!
//! Terms are passed as quoted arguments; morphisms, relations, and staged
//! factorizations are read from files in the text formats of [`formats`].
//! All results go to stdout. Exit status: 0 on success (including a
//! `DISTINCT` answer from `eq`), 1 when the library rejects the input,
//! with the reason on stderr, and 2 on usage errors.

mod dot;
mod formats;

use clap::{Parser, Subcommand, ValueEnum};
use poalgebra::factor;
use poalgebra::harness::{self, EnumSpec};
use poalgebra::interp;
use poalgebra::morphism::PosetMorphism;
use poalgebra::relation::Relation;
use poalgebra::rewrite::DEFAULT_BUDGET;
use poalgebra::term::{self, Term};

use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "poalgebra", version, about = "Posets as processes: parse, evaluate, factor, enumerate, verify")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a term and print it back with minimal parentheses.
    Parse {
        /// Term such as "(eta * id1) ; mu".
        term: String,
    },
    /// Evaluate a term to the poset it denotes.
    Interp {
        term: String,
        /// Emit Graphviz instead of the poset text format.
        #[arg(long)]
        dot: bool,
    },
    /// Decide whether two parallel terms denote the same morphism.
    Eq { left: String, right: String },
    /// Compose two morphism files in diagrammatic order.
    Compose { left: PathBuf, right: PathBuf },
    /// Tensor two morphism files.
    Tensor { left: PathBuf, right: PathBuf },
    /// Stage a morphism along a linearization of its internal events.
    Factorize {
        file: PathBuf,
        /// Internal events in schedule order, e.g. `--lin 2,0,1`;
        /// defaults to the least linearization.
        #[arg(long, value_delimiter = ',')]
        lin: Option<Vec<usize>>,
    },
    /// Compose a staged factorization back into a single morphism.
    FactCompose { file: PathBuf },
    /// Render a relation file as a term built without `sigma`.
    Rel2term { file: PathBuf },
    /// Print the canonical term of a morphism file.
    Canon { file: PathBuf },
    /// List one representative per isomorphism class within bounds.
    Enumerate {
        #[arg(long)]
        max_events: usize,
        /// Bound on source arity; defaults to the event bound.
        #[arg(long)]
        max_m: Option<usize>,
        /// Bound on target arity; defaults to the event bound.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Event bound for the enumeration-backed suites.
        #[arg(long, default_value_t = 4)]
        max_events: usize,
        /// Stream seed for the faithful suite.
        #[arg(long, default_value_t = 11)]
        seed: u64,
        /// Rewrite budget per pair for the faithful suite.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Pair count for the faithful suite.
        #[arg(long, default_value_t = 50)]
        sample: usize,
    },
    /// Export a morphism file as Graphviz.
    Dot { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy)]
enum Suite {
    Soundness,
    Fullness,
    Bijection,
    Switch,
    TermLaws,
    Faithful,
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

fn load_poset(path: &Path) -> Result<PosetMorphism, String> {
    formats::parse_poset(&read(path)?).map_err(|e| format!("{}: {}", path.display(), e))
}

fn load_relation(path: &Path) -> Result<Relation, String> {
    formats::parse_relation(&read(path)?).map_err(|e| format!("{}: {}", path.display(), e))
}

fn parse_term(text: &str) -> Result<Term, String> {
    term::parse(text).map_err(|e| e.to_string())
}

fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Parse { term } => {
            println!("{}", parse_term(&term)?);
        }
        Cmd::Interp { term, dot } => {
            let value = interp::interp(&parse_term(&term)?);
            if dot {
                print!("{}", dot::to_dot(&value));
            } else {
                print!("{}", formats::print_poset(&value));
            }
        }
        Cmd::Eq { left, right } => {
            let (a, b) = (parse_term(&left)?, parse_term(&right)?);
            let equal = interp::tp_equal(&a, &b).map_err(|e| e.to_string())?;
            println!("{}", if equal { "EQUAL" } else { "DISTINCT" });
        }
        Cmd::Compose { left, right } => {
            let value = load_poset(&left)?.compose(&load_poset(&right)?).map_err(|e| e.to_string())?;
            print!("{}", formats::print_poset(&value));
        }
        Cmd::Tensor { left, right } => {
            print!("{}", formats::print_poset(&load_poset(&left)?.tensor(&load_poset(&right)?)));
        }
        Cmd::Factorize { file, lin } => {
            let f = load_poset(&file)?;
            let schedule = lin.unwrap_or_else(|| factor::lex_least_linearization(&f));
            let fact = factor::factorize(&f, &schedule).map_err(|e| e.to_string())?;
            print!("{}", formats::print_factorization(&fact));
        }
        Cmd::FactCompose { file } => {
            let fact =
                formats::parse_factorization(&read(&file)?).map_err(|e| format!("{}: {}", file.display(), e))?;
            let (value, induced) = factor::fact_compose(&fact);
            print!("{}", formats::print_poset(&value));
            let schedule: Vec<String> = induced.iter().map(usize::to_string).collect();
            println!("# induced {}", schedule.join(" "));
        }
        Cmd::Rel2term { file } => {
            println!("{}", factor::rel_to_term(&load_relation(&file)?));
        }
        Cmd::Canon { file } => {
            println!("{}", factor::canonical_term(&load_poset(&file)?).map_err(|e| e.to_string())?);
        }
        Cmd::Enumerate { max_events, max_m, max_n } => {
            let spec = EnumSpec::events(max_events)
                .with_arity(max_m.unwrap_or(max_events), max_n.unwrap_or(max_events));
            let classes = harness::enumerate_morphisms(&spec).map_err(|e| e.to_string())?;
            for f in &classes {
                print!("{}", formats::print_poset(f));
                println!();
            }
            println!("# classes {}", classes.len());
        }
        Cmd::Verify { suite, max_events, seed, budget, sample } => {
            let spec = EnumSpec::events(max_events);
            let report = match suite {
                Suite::Soundness => harness::suite_soundness(),
                Suite::Fullness => harness::suite_fullness(&spec).map_err(|e| e.to_string())?,
                Suite::Bijection => harness::suite_bijection(&spec).map_err(|e| e.to_string())?,
                Suite::Switch => harness::suite_switch(&spec).map_err(|e| e.to_string())?,
                Suite::TermLaws => harness::suite_term_laws(),
                Suite::Faithful => harness::suite_faithful(sample, budget, seed),
            };
            print!("{report}");
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Dot { file } => {
            print!("{}", dot::to_dot(&load_poset(&file)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}
