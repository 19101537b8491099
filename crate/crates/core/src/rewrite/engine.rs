//! Rule application.
//!
//! One pass visits the terms of an expression in canonical order. Within a
//! term the rewrite sites are tried in pre-order: for a vector term its
//! dot-word (outermost subtree first); then each scalar atom in atom order
//! (a power site before its base, the atom before the subwords of its
//! arguments); then ordered pairs of distinct atoms for product patterns. At
//! each site the rules are tried in order and the first match is rewritten.
//! Each term is rewritten at most once per pass.

use std::collections::HashMap;

use super::pattern::{Bindings, Pattern};
use super::rule::{RewriteRule, RuleSet};
use crate::error::{Error, Result};
use crate::expr::{DotWord, Expr, Monomial, ScalarAtom, ScalarExpr, Var, VectorExpr};

pub const DEFAULT_CAP: usize = 10_000;

/// A place in a canonical expression where a rule may match.
#[derive(Clone, Copy, Debug)]
pub enum Site<'a> {
    Word(&'a DotWord),
    Atom(&'a ScalarAtom),
    Power(&'a ScalarAtom, u32),
    Monomial(&'a Monomial),
}

/// Matches the left side of `rule` at `site`. For a product pattern the
/// site is a monomial, and ordered pairs of distinct atoms with exponent 1
/// are tried in atom order; the first binding found is returned.
pub fn match_site(rule: &RewriteRule, site: Site<'_>) -> Option<Bindings> {
    let mut env = rule.fresh_bindings();
    let ok = match (rule.pattern(), site) {
        (Pattern::Word(p), Site::Word(w)) => p.matches(w, &mut env),
        (Pattern::Atom(p), Site::Atom(a)) => p.matches(a, &mut env),
        (Pattern::Power(p, n), Site::Power(a, e)) => *n == e && p.matches(a, &mut env),
        (Pattern::Product(..), Site::Monomial(m)) => return match_product(rule, m).map(|(_, _, env)| env),
        _ => false,
    };
    ok.then_some(env)
}

fn match_product(rule: &RewriteRule, m: &Monomial) -> Option<(usize, usize, Bindings)> {
    let Pattern::Product(p1, p2) = rule.pattern() else {
        return None;
    };
    let singles: Vec<usize> = (0..m.factors().len()).filter(|&i| m.factors()[i].1 == 1).collect();
    for &i in &singles {
        for &j in &singles {
            if i == j {
                continue;
            }
            let mut env = rule.fresh_bindings();
            if p1.matches(&m.factors()[i].0, &mut env) && p2.matches(&m.factors()[j].0, &mut env) {
                return Some((i, j, env));
            }
        }
    }
    None
}

struct Pass<'a> {
    rules: &'a RuleSet,
    literals: HashMap<String, Var>,
}

impl Pass<'_> {
    fn instantiate(&self, rule: &RewriteRule, env: &Bindings) -> Result<Expr> {
        rule.instantiate(env, &|name| self.literals.get(name).cloned())
    }

    fn scalar(&self, rule: &RewriteRule, env: &Bindings) -> Result<ScalarExpr> {
        match self.instantiate(rule, env)? {
            Expr::Scalar(s) => Ok(s),
            Expr::Vector(_) => Err(Error::type_error(format!(
                "rule `{}` replaces a scalar with a vector",
                rule.name()
            ))),
        }
    }

    /// Rewrites the first matching subword of `w`, returning the new value
    /// of the whole word.
    fn word(&self, w: &DotWord) -> Result<Option<VectorExpr>> {
        for rule in self.rules.rules() {
            if let Some(env) = match_site(rule, Site::Word(w)) {
                return match self.instantiate(rule, &env)? {
                    Expr::Vector(v) => Ok(Some(v)),
                    Expr::Scalar(_) => Err(Error::type_error(format!(
                        "rule `{}` replaces a vector with a scalar",
                        rule.name()
                    ))),
                };
            }
        }
        if let DotWord::Pair(l, r) = w {
            if let Some(nl) = self.word(l)? {
                return Ok(Some(nl.dot(&VectorExpr::word((**r).clone()))));
            }
            if let Some(nr) = self.word(r)? {
                return Ok(Some(VectorExpr::word((**l).clone()).dot(&nr)));
            }
        }
        Ok(None)
    }

    /// Rewrites the first site inside `atom^e`, returning its new value.
    fn atom(&self, atom: &ScalarAtom, e: u32) -> Result<Option<ScalarExpr>> {
        if e >= 2 {
            for rule in self.rules.rules() {
                if let Some(env) = match_site(rule, Site::Power(atom, e)) {
                    return Ok(Some(self.scalar(rule, &env)?));
                }
            }
        }
        for rule in self.rules.rules() {
            if let Some(env) = match_site(rule, Site::Atom(atom)) {
                return Ok(Some(self.scalar(rule, &env)?.pow(e)));
            }
        }
        let value = match atom {
            ScalarAtom::Sym(_) => None,
            ScalarAtom::Q(w) => self.word(w)?.map(|v| v.q()),
            ScalarAtom::B(u, v) => match self.word(u)? {
                Some(nu) => Some(nu.b(&VectorExpr::word(v.clone()))),
                None => self.word(v)?.map(|nv| VectorExpr::word(u.clone()).b(&nv)),
            },
        };
        Ok(value.map(|s| s.pow(e)))
    }

    /// Rewrites the first site of a monomial, returning its new value.
    fn monomial(&self, m: &Monomial) -> Result<Option<ScalarExpr>> {
        for (i, (a, e)) in m.factors().iter().enumerate() {
            if let Some(v) = self.atom(a, *e)? {
                return Ok(Some(&v * &ScalarExpr::term(m.without_positions(&[i]), one())));
            }
        }
        for rule in self.rules.rules() {
            if let Some((i, j, env)) = match_product(rule, m) {
                let v = self.scalar(rule, &env)?;
                return Ok(Some(&v * &ScalarExpr::term(m.without_positions(&[i, j]), one())));
            }
        }
        Ok(None)
    }

    fn scalar_expr(&self, s: &ScalarExpr) -> Result<ScalarExpr> {
        let mut out = ScalarExpr::zero();
        for (m, c) in s.terms() {
            match self.monomial(m)? {
                Some(v) => out.add_assign_ref(&v.scale(c)),
                None => out.add_term(m.clone(), c.clone()),
            }
        }
        Ok(out)
    }

    fn vector_expr(&self, v: &VectorExpr) -> Result<VectorExpr> {
        let mut out = VectorExpr::zero();
        for (w, coeff) in v.terms() {
            for (m, c) in coeff.terms() {
                let t = ScalarExpr::term(m.clone(), c.clone());
                if let Some(nw) = self.word(w)? {
                    out.add_assign_ref(&nw.scale(&t));
                } else if let Some(nm) = self.monomial(m)? {
                    out.add_term(w.clone(), &nm.scale(c));
                } else {
                    out.add_term(w.clone(), &t);
                }
            }
        }
        Ok(out)
    }
}

fn one() -> crate::expr::Rational {
    num_traits::One::one()
}

/// One pass of `rules` over `e` (the `/.` operator).
pub fn apply_once(e: &Expr, rules: &RuleSet) -> Result<Expr> {
    let pass = Pass {
        rules,
        literals: e.symbols().into_iter().map(|v| (v.name().to_string(), v)).collect(),
    };
    Ok(match e {
        Expr::Scalar(s) => Expr::Scalar(pass.scalar_expr(s)?),
        Expr::Vector(v) => Expr::Vector(pass.vector_expr(v)?),
    })
}

/// Repeats [`apply_once`] until nothing changes (the `//.` operator).
pub fn apply_fixpoint(e: &Expr, rules: &RuleSet, cap: usize) -> Result<Expr> {
    apply_fixpoint_traced(e, rules, cap, &mut |_| {})
}

/// Like [`apply_fixpoint`], calling `on_pass` with the value after every
/// pass that changed it.
pub fn apply_fixpoint_traced(e: &Expr, rules: &RuleSet, cap: usize, on_pass: &mut dyn FnMut(&Expr)) -> Result<Expr> {
    let mut cur = e.clone();
    for _ in 0..cap {
        let next = apply_once(&cur, rules)?;
        if next == cur {
            return Ok(cur);
        }
        on_pass(&next);
        cur = next;
    }
    Err(Error::NonTermination {
        rule_set: rules.name().to_string(),
        cap,
    })
}
