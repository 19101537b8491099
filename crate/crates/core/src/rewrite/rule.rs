use std::fmt;

use super::pattern::{AtomPat, Bindings, Pattern, WordPat};
use crate::error::{Error, Result};
use crate::expr::{interpret_raw, Expr, Symbolic, Value, Var, VectorExpr};
use crate::text::{parse_expr, print_raw, RawExpr};

/// A rewrite rule `lhs -> rhs`.
///
/// Identifiers starting with an uppercase letter are pattern variables and
/// bind dot-words; any other identifier is a literal vector symbol.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    name: String,
    lhs: Pattern,
    lhs_raw: RawExpr,
    rhs: RawExpr,
    vars: Vec<String>,
}

pub fn is_pattern_var(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase())
}

impl RewriteRule {
    pub fn new(name: &str, lhs: RawExpr, rhs: RawExpr) -> Result<Self> {
        let invalid = |message: String| Error::InvalidRule {
            name: name.to_string(),
            message,
        };
        let mut vars = Vec::new();
        let pattern = compile(&lhs, &mut vars).map_err(invalid)?;
        let lhs_names: Vec<&str> = lhs.idents().iter().map(|i| i.name.as_str()).collect();
        for id in rhs.idents() {
            if !lhs_names.contains(&id.name.as_str()) {
                return Err(invalid(format!(
                    "`{}` occurs on the right but not on the left",
                    id.name
                )));
            }
        }
        if matches!(pattern, Pattern::Inert) {
            for id in lhs.idents() {
                if is_pattern_var(&id.name) && !vars.contains(&id.name) {
                    vars.push(id.name.clone());
                }
            }
        }
        Ok(RewriteRule {
            name: name.to_string(),
            lhs: pattern,
            lhs_raw: lhs,
            rhs,
            vars,
        })
    }

    /// Parses `lhs` and `rhs` from the expression DSL.
    pub fn parse(name: &str, lhs: &str, rhs: &str) -> Result<Self> {
        RewriteRule::new(name, parse_expr(lhs)?, parse_expr(rhs)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pattern(&self) -> &Pattern {
        &self.lhs
    }

    pub fn lhs(&self) -> &RawExpr {
        &self.lhs_raw
    }

    pub fn rhs(&self) -> &RawExpr {
        &self.rhs
    }

    /// Pattern variable names, indexed by slot.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn fresh_bindings(&self) -> Bindings {
        vec![None; self.vars.len()]
    }

    /// Builds the right-hand side for a match. `literal` resolves literal
    /// symbol names; every literal on the right also occurs on the left, so
    /// it is present in the matched expression.
    pub(crate) fn instantiate(&self, env: &Bindings, literal: &dyn Fn(&str) -> Option<Var>) -> Result<Expr> {
        let v = interpret_raw(&self.rhs, &Symbolic, &mut |name, span| {
            if let Some(i) = self.vars.iter().position(|v| v == name) {
                let w = env[i].clone().expect("all rule variables are bound by a match");
                return Ok(Value::Vector(VectorExpr::word(w)));
            }
            match literal(name) {
                Some(v) => Ok(Value::Vector(VectorExpr::symbol(v))),
                None => Err(Error::UnknownSymbol {
                    name: name.to_string(),
                    span,
                }),
            }
        })?;
        Ok(v.into())
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} -> {}",
            self.name,
            print_raw(&self.lhs_raw),
            print_raw(&self.rhs)
        )
    }
}

fn compile(raw: &RawExpr, vars: &mut Vec<String>) -> std::result::Result<Pattern, String> {
    Ok(match raw {
        RawExpr::Dot(..) => Pattern::Word(word(raw, vars)?),
        RawExpr::B(l, r) if is_scaled(l) || is_scaled(r) => Pattern::Inert,
        RawExpr::Q(_) | RawExpr::B(..) => Pattern::Atom(atom(raw, vars)?),
        RawExpr::Mul(xs) if xs.len() == 2 => Pattern::Product(atom(&xs[0], vars)?, atom(&xs[1], vars)?),
        RawExpr::Pow(x, n) => Pattern::Power(atom(x, vars)?, *n),
        _ => {
            return Err(
                "the left side must be a product, a `q`/`b` atom, a product of two atoms, or a power of an atom".into(),
            )
        }
    })
}

fn is_scaled(raw: &RawExpr) -> bool {
    matches!(raw, RawExpr::Mul(_))
}

fn atom(raw: &RawExpr, vars: &mut Vec<String>) -> std::result::Result<AtomPat, String> {
    match raw {
        RawExpr::Q(x) => Ok(AtomPat::Q(word(x, vars)?)),
        RawExpr::B(l, r) => Ok(AtomPat::B(word(l, vars)?, word(r, vars)?)),
        _ => Err("expected a `q` or `b` atom".into()),
    }
}

fn word(raw: &RawExpr, vars: &mut Vec<String>) -> std::result::Result<WordPat, String> {
    match raw {
        RawExpr::Ident(id) if is_pattern_var(&id.name) => {
            let i = match vars.iter().position(|v| v == &id.name) {
                Some(i) => i,
                None => {
                    vars.push(id.name.clone());
                    vars.len() - 1
                }
            };
            Ok(WordPat::Var(i))
        }
        RawExpr::Ident(id) => Ok(WordPat::Lit(id.name.clone())),
        RawExpr::Dot(l, r) => Ok(WordPat::Dot(Box::new(word(l, vars)?), Box::new(word(r, vars)?))),
        _ => Err("pattern arguments must be symbols, variables, or products of them".into()),
    }
}

/// An ordered list of rules. Earlier rules take priority.
#[derive(Clone, Debug)]
pub struct RuleSet {
    name: String,
    rules: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn new(name: &str, rules: Vec<RewriteRule>) -> Self {
        RuleSet {
            name: name.to_string(),
            rules,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compiles_each_shape() {
        let r = RewriteRule::parse("flex", "(X.Y).X", "q(X)*Y").unwrap();
        assert!(matches!(r.pattern(), Pattern::Word(_)));
        assert_eq!(r.vars(), ["X", "Y"]);

        let r = RewriteRule::parse("prod", "b(X,Y)*b(Z,U)", "b(X.Z,Y.U) + b(X.U,Y.Z)").unwrap();
        assert!(matches!(r.pattern(), Pattern::Product(..)));
        assert_eq!(r.vars().len(), 4);

        let r = RewriteRule::parse("sq", "b(X,Y)^2", "b(X.X,Y.Y) + b(X.Y,Y.X)").unwrap();
        assert!(matches!(r.pattern(), Pattern::Power(_, 2)));

        let r = RewriteRule::parse("scaled", "b(X*q(Y),Z)", "q(Y)*b(X,Z)").unwrap();
        assert!(matches!(r.pattern(), Pattern::Inert));
        assert_eq!(r.vars().len(), 3);
    }

    #[test]
    fn rejects_bad_rules() {
        for (l, r) in [
            ("X", "X"),
            ("b(X,Y)", "b(X,Z)"),
            ("b(x,y)", "b(x,z)"),
            ("b(X+Y,Y)", "0"),
        ] {
            assert!(
                matches!(RewriteRule::parse("bad", l, r), Err(Error::InvalidRule { .. })),
                "{l} -> {r}"
            );
        }
    }
}
