//! Session scripts: a sequence of `;`-terminated statements.
//!
//! ```text
//! scalars alpha, beta;
//! vectors x, y;
//! rule swap: b(y, x) -> b(x, y);
//! ruleset fix = [swap];
//! let e = b(x,y) - b(y,x);
//! let f = apply(e, fix, once);
//! [final] assert_zero f;
//! ```
//!
//! Names are checked while parsing, so a script that parses will only fail
//! at run time on type errors or failed assertions.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Ident, RawExpr};
use super::lexer::Tok;
use super::parser::Parser;
use crate::error::{Error, Result, Span};
use crate::expr::{Sort, SymbolTable, Var};
use crate::rewrite::{builtin_ruleset, RewriteRule, RuleSet};

/// A parsed script: its declarations plus the steps to execute.
#[derive(Clone, Debug, Default)]
pub struct Session {
    pub name: String,
    pub symbols: SymbolTable,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug)]
pub struct Step {
    pub label: Option<String>,
    pub span: Span,
    pub kind: StepKind,
}

#[derive(Clone, Debug)]
pub enum StepKind {
    Let {
        name: Ident,
        value: LetValue,
    },
    AssertZero(Ident),
    AssertEqual(Ident, Expected),
    AssertFactored(Ident, RawExpr),
    /// Compare against the expression stored in a golden file.
    AssertGolden(Ident, String),
    OracleCheck {
        name: Ident,
        trials: Option<u32>,
    },
    Note(String),
}

#[derive(Clone, Debug)]
pub enum LetValue {
    Expr(RawExpr),
    Apply {
        source: Ident,
        rules: RuleSet,
        once: bool,
    },
    Subst {
        source: Ident,
        bindings: Vec<(Var, RawExpr)>,
    },
    Coeff {
        source: Ident,
        key: Vec<(Var, u32)>,
    },
    CoeffMatrix {
        source: Ident,
        vars: [Var; 2],
    },
}

#[derive(Clone, Debug)]
pub enum Expected {
    Expr(RawExpr),
    Matrix(Vec<Vec<RawExpr>>),
}

impl Session {
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

const KEYWORDS: &[&str] = &[
    "scalars",
    "vectors",
    "let",
    "rule",
    "ruleset",
    "assert_zero",
    "assert_equal",
    "assert_factored",
    "assert_golden",
    "oracle_check",
    "note",
    "apply",
    "subst",
    "coeff",
    "coeffmatrix",
    "once",
    "trials",
];

pub fn parse_script(text: &str) -> Result<Session> {
    let mut sp = ScriptParser {
        p: Parser::new(text)?,
        session: Session::default(),
        names: BTreeSet::new(),
        rules: BTreeMap::new(),
        sets: BTreeMap::new(),
    };
    while !sp.p.at_eof() {
        sp.statement()?;
    }
    Ok(sp.session)
}

struct ScriptParser {
    p: Parser,
    session: Session,
    names: BTreeSet<String>,
    rules: BTreeMap<String, RewriteRule>,
    sets: BTreeMap<String, RuleSet>,
}

impl ScriptParser {
    fn statement(&mut self) -> Result<()> {
        let span = self.p.span();
        let label = if self.p.eat(&Tok::LBracket) {
            let l = match self.p.peek().clone() {
                Tok::Str(s) => {
                    self.p.bump();
                    s
                }
                _ => self.p.ident("label")?.name,
            };
            self.p.expect(&Tok::RBracket, "`]`")?;
            Some(l)
        } else {
            None
        };
        let kw = self.p.ident("a statement keyword")?;
        let kind = match kw.name.as_str() {
            "scalars" | "vectors" => {
                let sort = if kw.name == "scalars" {
                    Sort::Scalar
                } else {
                    Sort::Vector
                };
                loop {
                    let id = self.p.ident("a symbol name")?;
                    self.check_fresh(&id)?;
                    if self.names.contains(&id.name) {
                        return Err(Error::Redeclared {
                            name: id.name,
                            existing: "value".into(),
                        });
                    }
                    self.session.symbols.declare(&id.name, sort)?;
                    if !self.p.eat(&Tok::Comma) {
                        break;
                    }
                }
                None
            }
            "rule" => {
                let name = self.p.ident("a rule name")?;
                self.p.expect(&Tok::Colon, "`:`")?;
                let lhs = self.p.expr()?;
                self.p.expect(&Tok::Arrow, "`->`")?;
                let rhs = self.p.expr()?;
                let rule = RewriteRule::new(&name.name, lhs, rhs)?;
                self.rules.insert(name.name, rule);
                None
            }
            "ruleset" => {
                let name = self.p.ident("a rule set name")?;
                self.p.expect(&Tok::Eq, "`=`")?;
                self.p.expect(&Tok::LBracket, "`[`")?;
                let mut rules = Vec::new();
                if !self.p.at(&Tok::RBracket) {
                    loop {
                        let r = self.p.ident("a rule or rule set name")?;
                        rules.extend(self.lookup_rules(&r)?.rules().iter().cloned());
                        if !self.p.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                self.p.expect(&Tok::RBracket, "`]`")?;
                self.sets.insert(name.name.clone(), RuleSet::new(&name.name, rules));
                None
            }
            "let" => {
                let name = self.p.ident("a name")?;
                self.check_fresh(&name)?;
                if self.session.symbols.get(&name.name).is_some() {
                    return Err(Error::Redeclared {
                        name: name.name,
                        existing: "symbol".into(),
                    });
                }
                self.p.expect(&Tok::Eq, "`=`")?;
                let value = self.let_value()?;
                self.names.insert(name.name.clone());
                Some(StepKind::Let { name, value })
            }
            "assert_zero" => Some(StepKind::AssertZero(self.defined()?)),
            "assert_equal" => {
                let name = self.defined()?;
                self.p.expect(&Tok::Comma, "`,`")?;
                let expected = if self.p.at(&Tok::LBracket) {
                    Expected::Matrix(self.matrix()?)
                } else {
                    Expected::Expr(self.checked_expr()?)
                };
                Some(StepKind::AssertEqual(name, expected))
            }
            "assert_factored" => {
                let name = self.defined()?;
                self.p.expect(&Tok::Comma, "`,`")?;
                Some(StepKind::AssertFactored(name, self.checked_expr()?))
            }
            "assert_golden" => {
                let name = self.defined()?;
                self.p.expect(&Tok::Comma, "`,`")?;
                match self.p.peek().clone() {
                    Tok::Str(file) => {
                        self.p.bump();
                        Some(StepKind::AssertGolden(name, file))
                    }
                    other => {
                        return Err(self
                            .p
                            .error(format!("expected a golden file name, found {}", other.describe())))
                    }
                }
            }
            "oracle_check" => {
                let name = self.defined()?;
                let trials = if self.p.eat(&Tok::Comma) {
                    let kw = self.p.ident("`trials`")?;
                    if kw.name != "trials" {
                        return Err(Error::Syntax {
                            span: kw.span,
                            message: "expected `trials`".into(),
                        });
                    }
                    self.p.expect(&Tok::Eq, "`=`")?;
                    let n = self.p.nat()?;
                    if n == 0 {
                        return Err(self.p.error("trials must be at least 1"));
                    }
                    Some(n)
                } else {
                    None
                };
                Some(StepKind::OracleCheck { name, trials })
            }
            "note" => match self.p.peek().clone() {
                Tok::Str(s) => {
                    self.p.bump();
                    Some(StepKind::Note(s))
                }
                other => return Err(self.p.error(format!("expected a string, found {}", other.describe()))),
            },
            _ => {
                return Err(Error::Syntax {
                    span: kw.span,
                    message: format!("unknown statement `{}`", kw.name),
                })
            }
        };
        self.p.expect(&Tok::Semi, "`;`")?;
        if let Some(kind) = kind {
            self.session.steps.push(Step { label, span, kind });
        }
        Ok(())
    }

    fn check_fresh(&self, id: &Ident) -> Result<()> {
        if KEYWORDS.contains(&id.name.as_str()) || super::is_function(&id.name) {
            return Err(Error::Syntax {
                span: id.span,
                message: format!("`{}` is reserved", id.name),
            });
        }
        Ok(())
    }

    fn defined(&mut self) -> Result<Ident> {
        let id = self.p.ident("a name")?;
        if !self.names.contains(&id.name) {
            return Err(Error::UndefinedName {
                name: id.name,
                span: id.span,
            });
        }
        Ok(id)
    }

    fn lookup_rules(&self, id: &Ident) -> Result<RuleSet> {
        if let Some(s) = self.sets.get(&id.name) {
            return Ok(s.clone());
        }
        if let Some(r) = self.rules.get(&id.name) {
            return Ok(RuleSet::new(&id.name, vec![r.clone()]));
        }
        builtin_ruleset(&id.name)
    }

    /// An expression whose identifiers are all symbols or defined names.
    fn checked_expr(&mut self) -> Result<RawExpr> {
        let e = self.p.expr()?;
        for id in e.idents() {
            if self.session.symbols.get(&id.name).is_none() && !self.names.contains(&id.name) {
                return Err(Error::UndefinedName {
                    name: id.name.clone(),
                    span: id.span,
                });
            }
        }
        Ok(e)
    }

    fn let_value(&mut self) -> Result<LetValue> {
        let call = match self.p.keyword() {
            Some(k @ ("apply" | "subst" | "coeff" | "coeffmatrix")) if self.p.peek_at(1) == &Tok::LParen => {
                k.to_string()
            }
            _ => return Ok(LetValue::Expr(self.checked_expr()?)),
        };
        self.p.bump();
        self.p.expect(&Tok::LParen, "`(`")?;
        let source = self.defined()?;
        self.p.expect(&Tok::Comma, "`,`")?;
        let value = match call.as_str() {
            "apply" => {
                let rs = self.p.ident("a rule set name")?;
                let rules = self.lookup_rules(&rs)?;
                let once = if self.p.eat(&Tok::Comma) {
                    let kw = self.p.ident("`once`")?;
                    if kw.name != "once" {
                        return Err(Error::Syntax {
                            span: kw.span,
                            message: "expected `once`".into(),
                        });
                    }
                    true
                } else {
                    false
                };
                LetValue::Apply { source, rules, once }
            }
            "subst" => {
                let mut bindings = Vec::new();
                loop {
                    let sym = self.p.ident("a symbol")?;
                    let var = self.symbol(&sym)?.0;
                    self.p.expect(&Tok::Arrow, "`->`")?;
                    bindings.push((var, self.checked_expr()?));
                    if !self.p.eat(&Tok::Comma) {
                        break;
                    }
                }
                LetValue::Subst { source, bindings }
            }
            "coeff" => LetValue::Coeff {
                source,
                key: self.monomial_key()?,
            },
            "coeffmatrix" => {
                self.p.expect(&Tok::LBracket, "`[`")?;
                let a = self.scalar_symbol()?;
                self.p.expect(&Tok::Comma, "`,`")?;
                let b = self.scalar_symbol()?;
                self.p.expect(&Tok::RBracket, "`]`")?;
                LetValue::CoeffMatrix { source, vars: [a, b] }
            }
            _ => unreachable!(),
        };
        self.p.expect(&Tok::RParen, "`)`")?;
        Ok(value)
    }

    fn symbol(&self, id: &Ident) -> Result<(Var, Sort)> {
        match self.session.symbols.get(&id.name) {
            Some((v, s)) => Ok((v.clone(), s)),
            None => Err(Error::UnknownSymbol {
                name: id.name.clone(),
                span: id.span,
            }),
        }
    }

    fn scalar_symbol(&mut self) -> Result<Var> {
        let id = self.p.ident("a scalar symbol")?;
        match self.symbol(&id)? {
            (v, Sort::Scalar) => Ok(v),
            _ => Err(Error::type_error(format!("`{}` is not a scalar symbol", id.name))),
        }
    }

    /// `1` or `s1^e1 * s2^e2 * ...`; an exponent of 0 asks for degree zero.
    fn monomial_key(&mut self) -> Result<Vec<(Var, u32)>> {
        if let Tok::Num(n) = self.p.peek() {
            if n == &num_traits::One::one() {
                self.p.bump();
                return Ok(Vec::new());
            }
        }
        let mut key: Vec<(Var, u32)> = Vec::new();
        loop {
            let span = self.p.span();
            let v = self.scalar_symbol()?;
            let e = if self.p.eat(&Tok::Caret) { self.p.nat()? } else { 1 };
            if key.iter().any(|(k, _)| k == &v) {
                return Err(Error::Syntax {
                    span,
                    message: format!("`{}` appears twice in the monomial", v.name()),
                });
            }
            key.push((v, e));
            if !self.p.eat(&Tok::Star) {
                break;
            }
        }
        Ok(key)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<RawExpr>>> {
        self.p.expect(&Tok::LBracket, "`[`")?;
        let mut rows = Vec::new();
        loop {
            self.p.expect(&Tok::LBracket, "`[`")?;
            let mut row = vec![self.checked_expr()?];
            while self.p.eat(&Tok::Comma) {
                row.push(self.checked_expr()?);
            }
            self.p.expect(&Tok::RBracket, "`]`")?;
            rows.push(row);
            if !self.p.eat(&Tok::Comma) {
                break;
            }
        }
        self.p.expect(&Tok::RBracket, "`]`")?;
        Ok(rows)
    }
}
