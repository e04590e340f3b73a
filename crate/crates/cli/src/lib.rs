//! Command-line front end for the `awlie` library.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use awlie::hall::hall_coords_by_solve;
use awlie::linalg::{in_span, rank_of, BasisIndex, LinalgError, SparseVector};
use awlie::verify::{self, PivotFactors};
use awlie::{parse_expr, Engine, Expr, HallBasis, HallError};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "awlie", version, about = "Exact computations in the universal Askey-Wilson algebra")]
pub struct Cli {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form in the universal Askey-Wilson algebra
    Nf { expr: String },
    /// List the Hall elements up to a length
    Hall {
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Expansion in the free algebra
    Expand { expr: String },
    /// Coordinates in the Hall basis
    Hallcoords { expr: String },
    /// Run the verification suite
    Verify {
        /// Glob over check names
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = verify::DEFAULT_RANGE)]
        range: u32,
    },
    /// Exact rank of a JSON list of expressions
    Rank {
        #[arg(long)]
        file: PathBuf,
        #[arg(long = "in", value_enum, default_value_t = Space::Delta)]
        space: Space,
        /// Also test whether this expression lies in the span
        #[arg(long)]
        target: Option<String>,
    },
    /// Image in the commutative polynomial ring
    Psi { expr: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Delta,
    Free,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) => EXIT_FAIL,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse(src: &str) -> Result<Expr, CliError> {
    parse_expr(src).map_err(|e| usage(format!("{src}: {e}")))
}

/// Output of a command: text and JSON forms plus the exit status.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub code: i32,
}

impl Output {
    fn ok(text: impl Into<String>, json: serde_json::Value) -> Self {
        Output {
            text: text.into(),
            json,
            code: EXIT_OK,
        }
    }
}

pub fn execute(cmd: &Command) -> Result<Output, CliError> {
    let engine = Engine::standard();
    match cmd {
        Command::Nf { expr } => {
            let x = parse(expr)?.to_uaw(engine).map_err(usage)?;
            Ok(Output::ok(x.to_string(), json!(x)))
        }
        Command::Hall { max_len } => {
            let basis = HallBasis::standard();
            if *max_len > basis.max_len() {
                return Err(usage(format!("--max-len is at most {}", basis.max_len())));
            }
            let elems: Vec<_> = basis.elements().iter().filter(|h| h.length <= *max_len).collect();
            let text: Vec<String> = elems.iter().map(|h| format!("H{}\t{}", h.index, h.tree)).collect();
            let js: Vec<_> = elems
                .iter()
                .map(|h| json!({"index": h.index, "length": h.length, "tree": h.tree.to_string()}))
                .collect();
            Ok(Output::ok(text.join("\n"), json!(js)))
        }
        Command::Expand { expr } => {
            let x = parse(expr)?.to_free().map_err(usage)?;
            Ok(Output::ok(x.to_string(), json!(x)))
        }
        Command::Hallcoords { expr } => {
            let f = parse(expr)?.to_free().map_err(usage)?;
            match hall_coords_by_solve(&f) {
                Ok(s) => Ok(Output::ok(s.to_string(), json!(s))),
                Err(HallError::NotInLie) => Err(CliError::Failed(format!("{expr}: not in the free Lie algebra"))),
                Err(e) => Err(usage(e)),
            }
        }
        Command::Verify { suite, range } => {
            let report = verify::run_suite(suite.as_deref(), *range);
            if report.results.is_empty() {
                return Err(usage(format!("no check matches {}", suite.as_deref().unwrap_or("*"))));
            }
            Ok(Output {
                text: report.to_string(),
                json: report.to_json(),
                code: if report.passed() { EXIT_OK } else { EXIT_FAIL },
            })
        }
        Command::Rank { file, space, target } => {
            let raw = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let srcs: Vec<String> = serde_json::from_str(&raw).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let exprs = srcs.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
            let target = target.as_deref().map(parse).transpose()?;
            match space {
                Space::Delta => {
                    let ev = |e: &Expr| e.to_uaw(engine).map_err(usage);
                    let vs = exprs.iter().map(ev).collect::<Result<Vec<_>, _>>()?;
                    let t = target.as_ref().map(ev).transpose()?;
                    rank_report(&vs, t.as_ref(), |a, b| {
                        b.degree().cmp(&a.degree()).then_with(|| b.cmp(a))
                    })
                }
                Space::Free => {
                    let ev = |e: &Expr| e.to_free().map_err(usage);
                    let vs = exprs.iter().map(ev).collect::<Result<Vec<_>, _>>()?;
                    let t = target.as_ref().map(ev).transpose()?;
                    rank_report(&vs, t.as_ref(), |a, b| b.cmp(a))
                }
            }
        }
        Command::Psi { expr } => {
            let x = parse(expr)?.to_comm(engine).map_err(usage)?;
            Ok(Output::ok(x.to_string(), json!(x)))
        }
    }
}

fn rank_report<V, F>(vectors: &[V], target: Option<&V>, order: F) -> Result<Output, CliError>
where
    V: SparseVector + Clone,
    V::Label: Ord,
    F: Fn(&V::Label, &V::Label) -> std::cmp::Ordering,
{
    let mut all: Vec<V> = vectors.to_vec();
    all.extend(target.cloned());
    let basis = BasisIndex::from_support(&all, order);
    let el = rank_of(vectors, &basis).map_err(usage)?;
    let factors = PivotFactors::from_pivots(el.pivots.iter());
    let mut text = format!("rank {} of {}", el.rank, vectors.len());
    let mut js = json!({"rank": el.rank, "vectors": vectors.len(), "pivot_factors": factors});
    let Some(t) = target else {
        return Ok(Output::ok(text, js));
    };
    match in_span(t, vectors, &basis) {
        Ok(coords) => {
            let cs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            text.push_str(&format!("\nin span: [{}]", cs.join(", ")));
            js["in_span"] = json!(true);
            js["coords"] = json!(coords);
            Ok(Output::ok(text, js))
        }
        Err(LinalgError::NotInSpan) => {
            text.push_str("\nnot in span");
            js["in_span"] = json!(false);
            Ok(Output {
                text,
                json: js,
                code: EXIT_FAIL,
            })
        }
        Err(e) => Err(usage(e)),
    }
}

/// Parses `args`, runs the command and writes to `out` and `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                writeln!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let _ = if cli.json {
                writeln!(err, "{}", json!({"error": e.to_string(), "code": e.code()}))
            } else {
                writeln!(err, "awlie: {e}")
            };
            e.code()
        }
    }
}
