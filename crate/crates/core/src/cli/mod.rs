//! The `thompson` command line.
//!
//! Exit codes: 0 success, 1 parse error, 2 object or context mismatch,
//! 3 validation failure, 4 failed check.

pub mod render;

use std::ffi::OsString;
use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dyadic::DyadicError;
use crate::forest::{enumerate_trees, Arity, ForestError};
use crate::free;
use crate::group::{GroupElement, GroupError, Word};
use crate::pl::{PlError, PlMap};
use crate::span::{SpanError, SpanMap};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "thompson",
    version,
    about = "Tree pairs, spans and PL maps for Thompson's group F"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum DataFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    #[default]
    Text,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Product: apply A, then B.
    Mul { a: String, b: String },
    /// Inverse of a span.
    Inv { a: String },
    /// Reduced representative of a span.
    Reduce { a: String },
    /// Whether two spans represent the same map.
    Eq {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t)]
        format: DataFormat,
    },
    /// Evaluates a word in x0, x1 (letters act left to right).
    Word { word: String },
    /// The PL map of a binary span.
    ToPl {
        a: String,
        #[arg(long, value_enum, default_value_t)]
        format: DataFormat,
    },
    /// The reduced span of a PL map given as `x:y,x:y,...`.
    FromPl {
        p: String,
        #[arg(long, value_enum, default_value_t)]
        format: DataFormat,
    },
    /// Tree utilities.
    Trees {
        #[command(subcommand)]
        action: TreesCommand,
    },
    /// Draws a span (as two trees) or a PL map (as a graph).
    Render {
        a: String,
        #[arg(long, value_enum, default_value_t)]
        format: RenderFormat,
    },
    /// Compares L(1)(n,k) with order-preserving maps n -> k.
    Finord { n: usize, k: usize },
    /// Runs a verification suite.
    Check {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TreesCommand {
    /// Lists every tree with N leaves.
    Enumerate {
        n: usize,
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// The result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Failure {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

fn forest_code(e: &ForestError) -> i32 {
    match e {
        ForestError::Parse { .. } => EXIT_PARSE,
        ForestError::ArityMismatch { .. }
        | ForestError::ShapeMismatch { .. }
        | ForestError::CodomainMismatch(..) => EXIT_MISMATCH,
        ForestError::InvalidArity(_)
        | ForestError::IndexOutOfRange { .. }
        | ForestError::NotASubtree(..) => EXIT_INVALID,
    }
}

impl From<ForestError> for Failure {
    fn from(e: ForestError) -> Self {
        Failure::new(forest_code(&e), e)
    }
}

impl From<SpanError> for Failure {
    fn from(e: SpanError) -> Self {
        let code = match &e {
            SpanError::Forest(f) => forest_code(f),
            SpanError::ObjectMismatch { .. } => EXIT_MISMATCH,
            SpanError::LeafCountMismatch { .. } => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match &e {
            GroupError::UnknownSymbol(_) => EXIT_PARSE,
            GroupError::ContextMismatch(..) => EXIT_MISMATCH,
            GroupError::Span(s) => return s.clone().into(),
            GroupError::Forest(f) => forest_code(f),
            _ => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

impl From<PlError> for Failure {
    fn from(e: PlError) -> Self {
        let code = match &e {
            PlError::Malformed(_) | PlError::Dyadic(DyadicError::Malformed(_)) => EXIT_PARSE,
            PlError::ObjectMismatch { .. } => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

fn span(s: &str) -> Result<SpanMap, Failure> {
    Ok(s.parse::<SpanMap>()?)
}

fn pl_json(p: &PlMap) -> serde_json::Value {
    let points: Vec<[String; 2]> = p
        .points()
        .iter()
        .map(|(x, y)| [x.to_string(), y.to_string()])
        .collect();
    json!({ "src": p.src(), "dst": p.dst(), "breakpoints": points })
}

fn execute(cmd: Command) -> Result<Outcome, Failure> {
    let out = match cmd {
        Command::Mul { a, b } => {
            let (a, b) = (span(&a)?, span(&b)?);
            Outcome::ok(format!("{}\n", b.compose(&a)?))
        }
        Command::Inv { a } => Outcome::ok(format!("{}\n", span(&a)?.inverse())),
        Command::Reduce { a } => {
            let (s, cancelled) = SpanMap::parse_reporting(&a)?;
            let mut out = Outcome::ok(format!("{s}\n"));
            if cancelled > 0 {
                out.stderr =
                    format!("note: input was not reduced; cancelled {cancelled} common caret(s)\n");
            }
            out
        }
        Command::Eq { a, b, format } => {
            let (a, b) = (span(&a)?, span(&b)?);
            let equal = a == b;
            let text = match format {
                DataFormat::Text => format!("{equal}\n"),
                DataFormat::Json => {
                    let v = json!({ "equal": equal, "span": [a.to_string(), b.to_string()] });
                    format!("{v}\n")
                }
            };
            Outcome::ok(text)
        }
        Command::Word { word } => {
            let w: Word = word.parse()?;
            Outcome::ok(format!("{}\n", GroupElement::from_word(&w)?))
        }
        Command::ToPl { a, format } => {
            let p = PlMap::from_span(&span(&a)?)?;
            Outcome::ok(match format {
                DataFormat::Text => format!("{p}\n"),
                DataFormat::Json => format!("{}\n", pl_json(&p)),
            })
        }
        Command::FromPl { p, format } => {
            let p: PlMap = p.parse()?;
            let s = p.to_span();
            Outcome::ok(match format {
                DataFormat::Text => format!("{s}\n"),
                DataFormat::Json => {
                    let v = json!({ "src": s.src(), "dst": s.dst(), "span": s.to_string() });
                    format!("{v}\n")
                }
            })
        }
        Command::Trees {
            action: TreesCommand::Enumerate { n, arity },
        } => {
            let arity = Arity::new(arity)?;
            let mut out = String::new();
            for t in enumerate_trees(n, arity) {
                let _ = writeln!(out, "{t}");
            }
            Outcome::ok(out)
        }
        Command::Render { a, format } => {
            let text = if a.trim_start().starts_with('<') {
                let s = span(&a)?;
                match format {
                    RenderFormat::Text => render::span_text(&s),
                    RenderFormat::Svg => render::span_svg(&s),
                }
            } else {
                let p: PlMap = a.parse()?;
                match format {
                    RenderFormat::Text => render::pl_text(&p),
                    RenderFormat::Svg => render::pl_svg(&p),
                }
            };
            Outcome::ok(text)
        }
        Command::Finord { n, k } => report_outcome(&[free::finord_check(n, k)]),
        Command::Check { suite, seed, bound } => report_outcome(&verify::run(suite, seed, bound)),
    };
    Ok(out)
}

fn report_outcome(reports: &[verify::Report]) -> Outcome {
    let mut out = String::new();
    let mut failed = 0;
    let mut total = 0;
    for r in reports {
        let _ = write!(out, "{r}");
        total += r.checks.len();
        failed += r.failures().count();
    }
    let _ = writeln!(out, "{} checks, {failed} failed", total);
    Outcome {
        code: if failed == 0 {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        },
        stdout: out,
        stderr: String::new(),
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("thompson").chain(args.iter().copied()))
    }

    #[test]
    fn word_identity() {
        let o = run_args(&["word", "x0 x0^-1"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "<[l] | [l]>\n");
    }

    #[test]
    fn to_pl_figure() {
        let o = run_args(&["to-pl", "<[(l (l l))] | [((l l) l)]>"]);
        assert_eq!(o.stdout, "0:0,1/2^2:1/2^1,1/2^1:3/2^2,1:1\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["inv", "<[(l l] | [l l]>"]).code, EXIT_PARSE);
        assert_eq!(run_args(&["word", "x0 y"]).code, EXIT_PARSE);
        assert_eq!(
            run_args(&["mul", "<[(l l)] | [l l]>", "<[(l l)] | [l l]>"]).code,
            EXIT_MISMATCH
        );
        assert_eq!(run_args(&["from-pl", "0:0,1/3:1/2,1:1"]).code, EXIT_INVALID);
        assert_eq!(run_args(&["from-pl", "0:0,1/4:3/4,1:1"]).code, EXIT_INVALID);
        assert_eq!(run_args(&["from-pl", "0:0,1/4"]).code, EXIT_PARSE);
        assert_eq!(
            run_args(&["trees", "enumerate", "3", "--arity", "1"]).code,
            EXIT_INVALID
        );
        assert_eq!(run_args(&["bogus"]).code, EXIT_PARSE);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn reduce_notes_cancellation() {
        let o = run_args(&["reduce", "<[(l l)] | [(l l)]>"]);
        assert_eq!(o.stdout, "<[l] | [l]>\n");
        assert!(o.stderr.contains("cancelled 1"));
        let o = run_args(&["reduce", "<[l] | [l]>"]);
        assert!(o.stderr.is_empty());
    }
}
