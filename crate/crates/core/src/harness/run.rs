//! Executes a parsed [`Session`] and collects its checks.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result, Span};
use crate::expr::{canonicalize, Expr, Scope, SymbolTable};
use crate::oracle::check_identity;
use crate::poly::{check_sorts, coeff, coeff_matrix, factored_equal, subst, CoeffMatrix};
use crate::rewrite::{apply_fixpoint_traced, apply_once, DEFAULT_CAP};
use crate::text::{parse_expr, print_expr, print_raw, Expected, Ident, LetValue, RawExpr, Session, StepKind};

/// Where `assert_golden` finds its files.
#[derive(Clone, Debug, Default)]
pub enum Goldens {
    #[default]
    None,
    /// A directory holding one file per golden.
    Dir(PathBuf),
    /// `(file name, contents)` pairs compiled into the binary.
    Embedded(&'static [(&'static str, &'static str)]),
}

impl Goldens {
    pub fn load(&self, file: &str) -> Result<String> {
        let missing = |message: String| Error::Golden {
            file: file.to_string(),
            message,
        };
        match self {
            Goldens::None => Err(missing("no golden directory".into())),
            Goldens::Dir(dir) => std::fs::read_to_string(dir.join(file)).map_err(|e| missing(e.to_string())),
            Goldens::Embedded(table) => table
                .iter()
                .find(|(n, _)| *n == file)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| missing("not found".into())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Default trial count of `oracle_check`.
    pub trials: u32,
    pub verbose: bool,
    pub cap: usize,
    pub goldens: Goldens,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 42,
            trials: 100,
            verbose: false,
            cap: DEFAULT_CAP,
            goldens: Goldens::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Zero,
    Equal,
    Factored,
    Golden,
    Oracle,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Zero => "zero",
            CheckKind::Equal => "equal",
            CheckKind::Factored => "factored",
            CheckKind::Golden => "golden",
            CheckKind::Oracle => "oracle",
        })
    }
}

/// One assertion and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub kind: CheckKind,
    pub pass: bool,
    pub actual: String,
    pub expected: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SessionReport {
    pub session: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

impl SessionReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for SessionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.session.is_empty() {
            "<script>"
        } else {
            &self.session
        };
        writeln!(f, "session {name}")?;
        for line in &self.trace {
            writeln!(f, "  | {line}")?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        let width = self.checks.iter().map(|c| c.label.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "  {status}  {:<width$}  {}", c.label, c.kind)?;
            if !c.pass {
                writeln!(f, "        actual:   {}", c.actual)?;
                writeln!(f, "        expected: {}", c.expected)?;
                if let Some(d) = &c.detail {
                    writeln!(f, "        {d}")?;
                }
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "  {} of {} checks passed{}",
            self.checks.len() - failed,
            self.checks.len(),
            if self.pass { "" } else { " -- FAILED" }
        )
    }
}

#[derive(Clone, Debug)]
enum Binding {
    Expr(Expr),
    Matrix(CoeffMatrix),
}

struct Env<'a> {
    symbols: &'a SymbolTable,
    values: BTreeMap<String, Binding>,
}

impl Scope for Env<'_> {
    fn resolve(&self, name: &str, span: Span) -> Result<Expr> {
        match self.values.get(name) {
            Some(Binding::Expr(e)) => Ok(e.clone()),
            Some(Binding::Matrix(_)) => Err(Error::Type(format!(
                "`{name}` is a coefficient matrix, not an expression"
            ))),
            None => self.symbols.resolve(name, span),
        }
    }
}

impl Env<'_> {
    fn get(&self, id: &Ident) -> Result<&Binding> {
        self.values.get(&id.name).ok_or_else(|| Error::UndefinedName {
            name: id.name.clone(),
            span: id.span,
        })
    }

    fn expr(&self, id: &Ident) -> Result<&Expr> {
        match self.get(id)? {
            Binding::Expr(e) => Ok(e),
            Binding::Matrix(_) => Err(Error::Type(format!(
                "`{}` is a coefficient matrix, not an expression",
                id.name
            ))),
        }
    }

    fn canon(&self, raw: &RawExpr) -> Result<Expr> {
        canonicalize(raw, self)
    }
}

/// Zero is sort-agnostic: a literal `0` matches a zero vector.
fn same(a: &Expr, b: &Expr) -> bool {
    a == b || (a.is_zero() && b.is_zero())
}

fn print_matrix(rows: &[Vec<String>]) -> String {
    let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn printed(m: &CoeffMatrix) -> Vec<Vec<String>> {
    m.rows.iter().map(|r| r.iter().map(print_expr).collect()).collect()
}

fn describe(b: &Binding) -> String {
    match b {
        Binding::Expr(e) => print_expr(e),
        Binding::Matrix(m) => print_matrix(&printed(m)),
    }
}

/// Runs every step in order. Assertion failures are recorded in the report;
/// engine errors abort the run and carry the 1-based index of the step.
pub fn run_session(s: &Session, opts: &RunOptions) -> Result<SessionReport> {
    let mut env = Env {
        symbols: &s.symbols,
        values: BTreeMap::new(),
    };
    let mut report = SessionReport {
        session: s.name.clone(),
        pass: true,
        checks: Vec::new(),
        notes: Vec::new(),
        trace: Vec::new(),
    };
    for (i, step) in s.steps.iter().enumerate() {
        let label = step.label.clone();
        run_step(&mut env, &mut report, &step.kind, label, opts).map_err(|e| Error::Step {
            index: i + 1,
            source: Box::new(e),
        })?;
    }
    report.pass = report.checks.iter().all(|c| c.pass);
    Ok(report)
}

/// Executes only the `let` steps and returns the expression bound to `name`.
pub fn evaluate(s: &Session, name: &str, opts: &RunOptions) -> Result<Expr> {
    let mut env = Env {
        symbols: &s.symbols,
        values: BTreeMap::new(),
    };
    let mut scratch = SessionReport {
        session: s.name.clone(),
        pass: true,
        checks: Vec::new(),
        notes: Vec::new(),
        trace: Vec::new(),
    };
    for (i, step) in s.steps.iter().enumerate() {
        if let StepKind::Let { .. } = step.kind {
            run_step(&mut env, &mut scratch, &step.kind, None, opts).map_err(|e| Error::Step {
                index: i + 1,
                source: Box::new(e),
            })?;
        }
    }
    match env.values.remove(name) {
        Some(Binding::Expr(e)) => Ok(e),
        Some(Binding::Matrix(_)) => Err(Error::Type(format!(
            "`{name}` is a coefficient matrix, not an expression"
        ))),
        None => Err(Error::UndefinedName {
            name: name.to_string(),
            span: Span::default(),
        }),
    }
}

fn run_step(
    env: &mut Env<'_>,
    report: &mut SessionReport,
    kind: &StepKind,
    label: Option<String>,
    opts: &RunOptions,
) -> Result<()> {
    let label_for = |id: &Ident| label.clone().unwrap_or_else(|| id.name.clone());
    match kind {
        StepKind::Let { name, value } => {
            let b = let_value(env, report, value, opts)?;
            if opts.verbose {
                report.trace.push(format!("{} = {}", name.name, describe(&b)));
            }
            env.values.insert(name.name.clone(), b);
        }
        StepKind::AssertZero(id) => {
            let b = env.get(id)?;
            let pass = match b {
                Binding::Expr(e) => e.is_zero(),
                Binding::Matrix(m) => m.rows.iter().flatten().all(Expr::is_zero),
            };
            report.checks.push(Check {
                label: label_for(id),
                kind: CheckKind::Zero,
                pass,
                actual: describe(b),
                expected: "0".into(),
                detail: None,
            });
        }
        StepKind::AssertEqual(id, expected) => {
            let check = match (env.get(id)?, expected) {
                (Binding::Expr(e), Expected::Expr(raw)) => {
                    let want = env.canon(raw)?;
                    Check {
                        label: label_for(id),
                        kind: CheckKind::Equal,
                        pass: same(e, &want),
                        actual: print_expr(e),
                        expected: print_expr(&want),
                        detail: None,
                    }
                }
                (Binding::Matrix(m), Expected::Matrix(rows)) => {
                    let want = rows
                        .iter()
                        .map(|r| r.iter().map(|x| env.canon(x)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    matrix_check(label_for(id), m, &want)
                }
                (Binding::Expr(_), Expected::Matrix(_)) => {
                    return Err(Error::Type(format!(
                        "`{}` is an expression, not a coefficient matrix",
                        id.name
                    )))
                }
                (Binding::Matrix(_), Expected::Expr(_)) => {
                    return Err(Error::Type(format!(
                        "`{}` is a coefficient matrix, not an expression",
                        id.name
                    )))
                }
            };
            report.checks.push(check);
        }
        StepKind::AssertFactored(id, raw) => {
            let e = env.expr(id)?;
            let target = env.canon(raw)?;
            let pass = if e.is_zero() || target.is_zero() {
                same(e, &target)
            } else {
                factored_equal(e, &target)?
            };
            report.checks.push(Check {
                label: label_for(id),
                kind: CheckKind::Factored,
                pass,
                actual: print_expr(e),
                expected: print_raw(raw),
                detail: (!pass).then(|| format!("expanded target: {}", print_expr(&target))),
            });
        }
        StepKind::AssertGolden(id, file) => {
            let e = env.expr(id)?;
            let text = opts.goldens.load(file)?;
            let raw = parse_expr(&text).map_err(|err| Error::Golden {
                file: file.clone(),
                message: err.to_string(),
            })?;
            let want = env.canon(&raw)?;
            report.checks.push(Check {
                label: label_for(id),
                kind: CheckKind::Golden,
                pass: same(e, &want),
                actual: print_expr(e),
                expected: print_expr(&want),
                detail: None,
            });
        }
        StepKind::OracleCheck { name, trials } => {
            let trials = trials.unwrap_or(opts.trials);
            let entries: Vec<Expr> = match env.get(name)? {
                Binding::Expr(e) => vec![e.clone()],
                Binding::Matrix(m) => m.rows.iter().flatten().cloned().collect(),
            };
            let failed = entries
                .iter()
                .map(|e| check_identity(e, trials, opts.seed))
                .find(|r| !r.pass);
            report.checks.push(Check {
                label: label_for(name),
                kind: CheckKind::Oracle,
                pass: failed.is_none(),
                actual: match &failed {
                    None => format!("zero in {trials} trial(s)"),
                    Some(r) => r.value.clone().unwrap_or_default(),
                },
                expected: format!("zero in {trials} trial(s)"),
                detail: failed
                    .and_then(|r| r.counterexample)
                    .map(|a| format!("counterexample: {a}")),
            });
        }
        StepKind::Note(text) => report.notes.push(text.clone()),
    }
    Ok(())
}

fn let_value(env: &Env<'_>, report: &mut SessionReport, value: &LetValue, opts: &RunOptions) -> Result<Binding> {
    Ok(match value {
        LetValue::Expr(raw) => Binding::Expr(env.canon(raw)?),
        LetValue::Apply { source, rules, once } => {
            let e = env.expr(source)?;
            Binding::Expr(if *once {
                apply_once(e, rules)?
            } else if opts.verbose {
                let mut n = 0;
                let trace = &mut report.trace;
                apply_fixpoint_traced(e, rules, opts.cap, &mut |x| {
                    n += 1;
                    trace.push(format!("  {} pass {n}: {}", rules.name(), print_expr(x)));
                })?
            } else {
                apply_fixpoint_traced(e, rules, opts.cap, &mut |_| {})?
            })
        }
        LetValue::Subst { source, bindings } => {
            let e = env.expr(source)?;
            let mut typed = Vec::with_capacity(bindings.len());
            for (v, raw) in bindings {
                let x = env.canon(raw)?;
                let sort = env
                    .symbols
                    .get(v.name())
                    .map(|(_, s)| s)
                    .expect("parser checked the symbol");
                typed.push((v.clone(), sort, x));
            }
            check_sorts(&typed)?;
            let pairs: Vec<_> = typed.into_iter().map(|(v, _, x)| (v, x)).collect();
            Binding::Expr(subst(e, &pairs)?)
        }
        LetValue::Coeff { source, key } => Binding::Expr(coeff(env.expr(source)?, key)),
        LetValue::CoeffMatrix { source, vars } => Binding::Matrix(coeff_matrix(env.expr(source)?, vars.clone())),
    })
}

fn matrix_check(label: String, m: &CoeffMatrix, want: &[Vec<Expr>]) -> Check {
    let actual = printed(m);
    let expected: Vec<Vec<String>> = want.iter().map(|r| r.iter().map(print_expr).collect()).collect();
    let want_dims = (want.len(), want.first().map_or(0, Vec::len));
    let mut detail = None;
    if m.dims() != want_dims || want.iter().any(|r| r.len() != want_dims.1) {
        detail = Some(format!("dimensions {:?}, expected {:?}", m.dims(), want_dims));
    } else {
        'outer: for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                if !same(&m.rows[i][j], w) {
                    detail = Some(format!(
                        "entry ({i},{j}): {} vs {}",
                        print_expr(&m.rows[i][j]),
                        print_expr(w)
                    ));
                    break 'outer;
                }
            }
        }
    }
    Check {
        label,
        kind: CheckKind::Equal,
        pass: detail.is_none(),
        actual: print_matrix(&actual),
        expected: print_matrix(&expected),
        detail,
    }
}
