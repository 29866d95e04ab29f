//! `semipeano` command line. [`run`] does all the work and returns the exit
//! status together with the text for stdout and stderr.
//!
//! Exit status: 0 success, 1 negative answer (`not isomorphic`, `not equal`,
//! oracle discrepancy, unverified orbit partition), 2 not semi-Peano or
//! oracle clash, 64 usage, 65 malformed input, 66 unreadable file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use semipeano::{
    cross_check, decompose_pairing, default_bound, is_isomorphic, normalize, oracle_report,
    parse_presentation, ClosureStatus, Decomposition, NotSemiPeano, Presentation, Term, Variant,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_NOT_SEMI_PEANO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;

#[derive(Parser, Debug)]
#[command(name = "semipeano", version, about = "Finitely presented unary semi-Peano algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form (one cycle word per line) and the rank.
    Normalize { file: PathBuf },
    /// Decide whether two presentations define isomorphic algebras.
    Iso { first: PathBuf, second: PathBuf },
    /// Decide whether two terms are equal in the presented algebra.
    Eq { file: PathBuf, lhs: String, rhs: String },
    /// Print the factor and canonical representative of a term.
    Canon { file: PathBuf, term: String },
    /// Write the DOT graph of every factor, truncated at the given depth.
    Graph {
        file: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Bounded congruence closure of the presentation.
    Oracle {
        file: PathBuf,
        /// Word-length bound of the ball (default: 2 * longest relation word + 4).
        #[arg(long)]
        bound: Option<usize>,
        /// Also run the normalizer and compare the two.
        #[arg(long)]
        cross_check: bool,
    },
    /// Orbit partition of the unarised pairing algebra on [1, max].
    Orbits {
        #[arg(long)]
        variant: Variant,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::fail(EXIT_USAGE, text)
            } else {
                Output::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) | Err(out) => out,
    }
}

type Outcome = Result<Output, Output>;

fn execute(command: Command) -> Outcome {
    match command {
        Command::Normalize { file } => cmd_normalize(&file),
        Command::Iso { first, second } => cmd_iso(&first, &second),
        Command::Eq { file, lhs, rhs } => cmd_eq(&file, &lhs, &rhs),
        Command::Canon { file, term } => cmd_canon(&file, &term),
        Command::Graph { file, depth, out } => cmd_graph(&file, depth, &out),
        Command::Oracle {
            file,
            bound,
            cross_check,
        } => cmd_oracle(&file, bound, cross_check),
        Command::Orbits { variant, max } => cmd_orbits(variant, max),
    }
}

fn load(path: &Path) -> Result<Presentation, Output> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Output::fail(EXIT_NO_INPUT, format!("error: cannot read {}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| Output::fail(EXIT_DATA, format!("error: {}: {e}", path.display())))
}

fn decompose(p: &Presentation, path: &Path) -> Result<Decomposition, Output> {
    normalize(p).map_err(|NotSemiPeano { violation }| Output {
        code: EXIT_NOT_SEMI_PEANO,
        stdout: violation.render(p),
        stderr: format!("{}: not a semi-Peano presentation\n", path.display()),
    })
}

fn term(p: &Presentation, text: &str) -> Result<Term, Output> {
    p.parse_term(text).map_err(|e| {
        Output::fail(
            EXIT_DATA,
            format!("error: term {text:?}: column {}: {}", e.column, e.message),
        )
    })
}

fn cmd_normalize(path: &Path) -> Outcome {
    let p = load(path)?;
    let d = decompose(&p, path)?;
    let mut out = String::new();
    for w in d.normal_form().factors() {
        let _ = writeln!(out, "{}", p.signature().format_word(w));
    }
    let _ = writeln!(out, "rank {}", d.rank());
    Ok(Output::ok(out))
}

fn cmd_iso(first: &Path, second: &Path) -> Outcome {
    let (p, q) = (load(first)?, load(second)?);
    let (a, b) = (decompose(&p, first)?, decompose(&q, second)?);
    match is_isomorphic(&a, &b) {
        Ok(true) => Ok(Output::ok("isomorphic\n".into())),
        Ok(false) => Ok(Output {
            code: EXIT_NEGATIVE,
            stdout: "not isomorphic\n".into(),
            stderr: String::new(),
        }),
        Err(e) => Err(Output::fail(EXIT_DATA, format!("error: {e}"))),
    }
}

fn cmd_eq(path: &Path, lhs: &str, rhs: &str) -> Outcome {
    let p = load(path)?;
    let (s, t) = (term(&p, lhs)?, term(&p, rhs)?);
    let d = decompose(&p, path)?;
    Ok(if d.equal(&s, &t) {
        Output::ok("equal\n".into())
    } else {
        Output {
            code: EXIT_NEGATIVE,
            stdout: "not equal\n".into(),
            stderr: String::new(),
        }
    })
}

fn cmd_canon(path: &Path, text: &str) -> Outcome {
    let p = load(path)?;
    let t = term(&p, text)?;
    let d = decompose(&p, path)?;
    let (i, x) = d.element(&t);
    let sig = p.signature();
    Ok(Output::ok(format!(
        "factor {} (P/{}): {}\n",
        i + 1,
        sig.format_word(d.factor(i).omega()),
        sig.format_word(x.rep())
    )))
}

fn cmd_graph(path: &Path, depth: usize, out: &Path) -> Outcome {
    let p = load(path)?;
    let d = decompose(&p, path)?;
    let mut dot = String::new();
    for (i, factor) in d.factors().iter().enumerate() {
        let graph = factor
            .graph_dot(depth)
            .map_err(|e| Output::fail(EXIT_USAGE, format!("error: factor {}: {e}", i + 1)))?;
        dot.push_str(&graph);
    }
    std::fs::write(out, &dot)
        .map_err(|e| Output::fail(EXIT_NO_INPUT, format!("error: cannot write {}: {e}", out.display())))?;
    Ok(Output::ok(format!(
        "wrote {} graph(s) to {}\n",
        d.factors().len(),
        out.display()
    )))
}

fn cmd_oracle(path: &Path, bound: Option<usize>, check: bool) -> Outcome {
    let p = load(path)?;
    let bound = bound.unwrap_or_else(|| default_bound(&p));
    let report = if check { cross_check(&p, bound) } else { oracle_report(&p, bound) }
        .map_err(|e| Output::fail(EXIT_USAGE, format!("error: {e}")))?;
    let code = if !report.is_consistent() {
        EXIT_NEGATIVE
    } else if matches!(report.status, ClosureStatus::Clash { .. }) {
        EXIT_NOT_SEMI_PEANO
    } else {
        EXIT_OK
    };
    Ok(Output {
        code,
        stdout: report.render(&p),
        stderr: String::new(),
    })
}

fn cmd_orbits(variant: Variant, max: u64) -> Outcome {
    let report = decompose_pairing(variant, max).map_err(|e| Output::fail(EXIT_USAGE, format!("error: {e}")))?;
    Ok(Output {
        code: if report.verified() { EXIT_OK } else { EXIT_NEGATIVE },
        stdout: report.render_verbose(),
        stderr: String::new(),
    })
}
