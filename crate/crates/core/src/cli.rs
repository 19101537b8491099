//! The `symcomp` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::expr::{Sort, SymbolTable};
use crate::harness::{builtin_session, evaluate, run_session, Goldens, RunOptions, SessionReport, CATALOG};
use crate::oracle::{check_identity, check_identity_raw, Report};
use crate::text::{parse_expr, parse_script, LetValue, RawExpr, StepKind};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "symcomp",
    version,
    about = "Identity checking in symmetric composition algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Print every intermediate canonical form.
    #[arg(long, global = true)]
    pub verbose: bool,

    /// Seed of the randomized checks.
    #[arg(long, global = true, env = "SYMCOMP_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Default number of random trials.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a session script.
    Run { file: PathBuf },
    /// Run built-in sessions; with no argument, list them.
    Paper {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
    /// Check that an expression vanishes on random para-quaternions.
    Oracle {
        /// An expression, or a script file whose last `let` is checked.
        input: String,
    },
}

impl Cli {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            trials: self.trials,
            verbose: self.verbose,
            ..RunOptions::default()
        }
    }
}

/// Parses `args` and runs the command, returning the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Run { file } => cmd_run(cli, file, out),
        Command::Paper { name, all } => cmd_paper(cli, name.as_deref(), *all, out),
        Command::Oracle { input } => cmd_oracle(cli, input, out),
    };
    match result {
        Ok(pass) => {
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err((e, source)) => {
            if cli.json {
                let span = e
                    .span()
                    .map(|s| json!({"line": s.line, "column": s.column, "length": s.length}));
                let _ = writeln!(out, "{}", json!({"error": e.to_string(), "span": span}));
            }
            let _ = writeln!(err, "error: {e}");
            if let (Some(span), Some(src)) = (e.span(), source) {
                let _ = write!(err, "{}", snippet(&src, span));
            }
            EXIT_ERROR
        }
    }
}

type CmdResult = std::result::Result<bool, (Error, Option<String>)>;

fn snippet(src: &str, span: crate::error::Span) -> String {
    let Some(line) = src.lines().nth(span.line.saturating_sub(1)) else {
        return String::new();
    };
    let pad = " ".repeat(span.column.saturating_sub(1));
    let marks = "^".repeat(span.length.max(1));
    format!("{:>4} | {line}\n     | {pad}{marks}\n", span.line)
}

fn read(path: &Path) -> std::result::Result<String, (Error, Option<String>)> {
    std::fs::read_to_string(path).map_err(|e| (Error::Io(format!("{}: {e}", path.display())), None))
}

fn emit_sessions(cli: &Cli, reports: &[SessionReport], out: &mut dyn Write) {
    if cli.json {
        let v = if reports.len() == 1 {
            json!(reports[0])
        } else {
            json!(reports)
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("reports serialize"));
    } else {
        for r in reports {
            let _ = writeln!(out, "{r}");
        }
    }
}

fn cmd_run(cli: &Cli, file: &Path, out: &mut dyn Write) -> CmdResult {
    let src = read(file)?;
    let with_src = |e: Error| (e, Some(src.clone()));
    let name = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let session = parse_script(&src).map_err(with_src)?.named(name);
    let dir = file.parent().unwrap_or(Path::new("."));
    let opts = RunOptions {
        goldens: Goldens::Dir(dir.join("goldens")),
        ..cli.options()
    };
    let report = run_session(&session, &opts).map_err(with_src)?;
    emit_sessions(cli, std::slice::from_ref(&report), out);
    Ok(report.pass)
}

fn cmd_paper(cli: &Cli, name: Option<&str>, all: bool, out: &mut dyn Write) -> CmdResult {
    let opts = cli.options();
    let sessions: Vec<_> = match (name, all) {
        (Some(n), _) => vec![builtin_session(n).map_err(|e| (e, None))?],
        (None, true) => CATALOG.iter().collect(),
        (None, false) => {
            for s in CATALOG {
                let _ = writeln!(out, "{:<3} {}", s.name, s.title);
            }
            return Ok(true);
        }
    };
    let results: Vec<Result<SessionReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sessions
            .iter()
            .map(|s| {
                let opts = &opts;
                scope.spawn(move || s.run(opts))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("session thread")).collect()
    });
    let mut reports = Vec::with_capacity(results.len());
    for (s, r) in sessions.iter().zip(results) {
        reports.push(r.map_err(|e| (e, Some(s.script.to_string())))?);
    }
    emit_sessions(cli, &reports, out);
    if reports.len() > 1 && !cli.json {
        let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
        let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
        let _ = writeln!(out, "{} sessions, {checks} checks, {failed} failed", reports.len());
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn cmd_oracle(cli: &Cli, input: &str, out: &mut dyn Write) -> CmdResult {
    let path = Path::new(input);
    let report = if path.is_file() {
        let src = read(path)?;
        oracle_script(&src, cli).map_err(|e| (e, Some(src.clone())))?
    } else {
        let raw = parse_expr(input).map_err(|e| (e, Some(input.to_string())))?;
        let table = infer_symbols(&raw).map_err(|e| (e, None))?;
        check_identity_raw(&raw, &table, cli.trials, cli.seed).map_err(|e| (e, Some(input.to_string())))?
    };
    if cli.json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        let _ = writeln!(out, "{report}");
    }
    Ok(report.pass)
}

/// Runs the `let` steps of a script and checks the value of the last one.
fn oracle_script(src: &str, cli: &Cli) -> Result<Report> {
    let session = parse_script(src)?;
    let last = session
        .steps
        .iter()
        .rev()
        .find_map(|s| match &s.kind {
            StepKind::Let { name, value } if !matches!(value, LetValue::CoeffMatrix { .. }) => Some(name.name.clone()),
            _ => None,
        })
        .ok_or_else(|| Error::Type("the script binds no expression to check".into()))?;
    let value = evaluate(&session, &last, &cli.options())?;
    Ok(check_identity(&value, cli.trials, cli.seed))
}

/// Sorts for a bare expression: names used as arguments of `q`, `b` or `.`,
/// or added to such a name, are vectors; all others are scalars.
pub fn infer_symbols(raw: &RawExpr) -> Result<SymbolTable> {
    let mut vectors = BTreeSet::new();
    loop {
        let before = vectors.len();
        mark(raw, false, &mut vectors);
        if vectors.len() == before {
            break;
        }
    }
    let mut table = SymbolTable::new();
    for id in raw.idents() {
        if table.get(&id.name).is_none() {
            let sort = if vectors.contains(&id.name) {
                Sort::Vector
            } else {
                Sort::Scalar
            };
            table.declare(&id.name, sort)?;
        }
    }
    Ok(table)
}

fn is_vector(raw: &RawExpr, vectors: &BTreeSet<String>) -> bool {
    match raw {
        RawExpr::Ident(id) => vectors.contains(&id.name),
        RawExpr::Dot(..) => true,
        RawExpr::Neg(x) => is_vector(x, vectors),
        RawExpr::Sum(xs) | RawExpr::Mul(xs) => xs.iter().any(|x| is_vector(x, vectors)),
        _ => false,
    }
}

fn mark(raw: &RawExpr, vector: bool, vectors: &mut BTreeSet<String>) {
    match raw {
        RawExpr::Ident(id) => {
            if vector {
                vectors.insert(id.name.clone());
            }
        }
        RawExpr::Num(_) => {}
        RawExpr::Neg(x) => mark(x, vector, vectors),
        RawExpr::Sum(xs) => {
            let v = vector || xs.iter().any(|x| is_vector(x, vectors));
            for x in xs {
                mark(x, v, vectors);
            }
        }
        RawExpr::Mul(xs) => {
            for x in xs {
                mark(x, false, vectors);
            }
        }
        RawExpr::Pow(x, _) => mark(x, false, vectors),
        RawExpr::Dot(l, r) | RawExpr::B(l, r) => {
            mark(l, true, vectors);
            mark(r, true, vectors);
        }
        RawExpr::Q(x) => mark(x, true, vectors),
    }
}
