//! Two-sorted expression algebra and its canonical form.
//!
//! Scalars are polynomials over scalar symbols and `q`/`b` atoms; vectors are
//! sums of dot-words with scalar coefficients. Every value is kept fully
//! multilinear: products distribute over sums, `b` is bilinear, and `q` is
//! polarized over sums. `q(u.v) = q(u) q(v)` is an axiom, not a definition,
//! and is only applied by a rule.

mod interp;
mod scalar;
mod symbol;
mod vector;
mod word;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

pub use interp::{interpret, interpret_raw, Algebra, Symbolic, Value};
pub use scalar::{Monomial, ScalarAtom, ScalarExpr};
pub use symbol::{Sort, SymbolTable, Var};
pub use vector::VectorExpr;
pub use word::DotWord;

use crate::error::{Error, Result, Span};
use crate::text::ast::RawExpr;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A canonical expression of either sort.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Scalar(ScalarExpr),
    Vector(VectorExpr),
}

impl Expr {
    pub fn sort(&self) -> Sort {
        match self {
            Expr::Scalar(_) => Sort::Scalar,
            Expr::Vector(_) => Sort::Vector,
        }
    }

    pub fn zero(sort: Sort) -> Expr {
        match sort {
            Sort::Scalar => Expr::Scalar(ScalarExpr::zero()),
            Sort::Vector => Expr::Vector(VectorExpr::zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Expr::Scalar(s) => s.is_zero(),
            Expr::Vector(v) => v.is_zero(),
        }
    }

    pub fn as_scalar(&self) -> Option<&ScalarExpr> {
        match self {
            Expr::Scalar(s) => Some(s),
            Expr::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&VectorExpr> {
        match self {
            Expr::Vector(v) => Some(v),
            Expr::Scalar(_) => None,
        }
    }

    pub fn add(&self, other: &Expr) -> Result<Expr> {
        match (self, other) {
            (Expr::Scalar(a), Expr::Scalar(b)) => Ok(Expr::Scalar(a + b)),
            (Expr::Vector(a), Expr::Vector(b)) => Ok(Expr::Vector(a + b)),
            _ => Err(Error::type_error("cannot add a scalar and a vector")),
        }
    }

    pub fn sub(&self, other: &Expr) -> Result<Expr> {
        match (self, other) {
            (Expr::Scalar(a), Expr::Scalar(b)) => Ok(Expr::Scalar(a - b)),
            (Expr::Vector(a), Expr::Vector(b)) => Ok(Expr::Vector(a - b)),
            _ => Err(Error::type_error("cannot subtract a scalar and a vector")),
        }
    }

    pub fn neg(&self) -> Expr {
        match self {
            Expr::Scalar(s) => Expr::Scalar(-s),
            Expr::Vector(v) => Expr::Vector(-v),
        }
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &ScalarExpr) -> Expr {
        match self {
            Expr::Scalar(s) => Expr::Scalar(s * c),
            Expr::Vector(v) => Expr::Vector(v.scale(c)),
        }
    }

    /// Every symbol occurring in the expression, in canonical order.
    pub fn symbols(&self) -> BTreeSet<Var> {
        self.symbol_sorts().into_keys().collect()
    }

    /// Every symbol occurring in the expression with its sort.
    pub fn symbol_sorts(&self) -> BTreeMap<Var, Sort> {
        let mut out = BTreeMap::new();
        match self {
            Expr::Scalar(s) => scalar_symbols(s, &mut out),
            Expr::Vector(v) => {
                for (w, c) in v.terms() {
                    word_symbols(w, &mut out);
                    scalar_symbols(c, &mut out);
                }
            }
        }
        out
    }
}

fn word_symbols(w: &DotWord, out: &mut BTreeMap<Var, Sort>) {
    w.for_each_leaf(&mut |v| {
        out.insert(v.clone(), Sort::Vector);
    });
}

fn scalar_symbols(s: &ScalarExpr, out: &mut BTreeMap<Var, Sort>) {
    for (m, _) in s.terms() {
        for (a, _) in m.factors() {
            match a {
                ScalarAtom::Sym(v) => {
                    out.insert(v.clone(), Sort::Scalar);
                }
                ScalarAtom::Q(w) => word_symbols(w, out),
                ScalarAtom::B(u, v) => {
                    word_symbols(u, out);
                    word_symbols(v, out);
                }
            }
        }
    }
}

impl From<ScalarExpr> for Expr {
    fn from(s: ScalarExpr) -> Self {
        Expr::Scalar(s)
    }
}

impl From<VectorExpr> for Expr {
    fn from(v: VectorExpr) -> Self {
        Expr::Vector(v)
    }
}

/// Name resolution for canonicalization.
pub trait Scope {
    fn resolve(&self, name: &str, span: Span) -> Result<Expr>;
}

impl Scope for SymbolTable {
    fn resolve(&self, name: &str, span: Span) -> Result<Expr> {
        match self.get(name) {
            Some((v, Sort::Scalar)) => Ok(Expr::Scalar(ScalarExpr::symbol(v.clone()))),
            Some((v, Sort::Vector)) => Ok(Expr::Vector(VectorExpr::symbol(v.clone()))),
            None => Err(Error::UnknownSymbol {
                name: name.to_string(),
                span,
            }),
        }
    }
}

/// Reduces a raw tree to its unique canonical form.
pub fn canonicalize(raw: &RawExpr, scope: &dyn Scope) -> Result<Expr> {
    let v = interpret_raw(raw, &Symbolic, &mut |name, span| {
        scope.resolve(name, span).map(Value::from)
    })?;
    Ok(v.into())
}

/// Structural equality of canonical forms.
pub fn equal(a: &Expr, b: &Expr) -> bool {
    a == b
}

pub fn word_order(a: &DotWord, b: &DotWord) -> Ordering {
    a.cmp(b)
}

pub fn atom_order(a: &ScalarAtom, b: &ScalarAtom) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_expr;

    fn table() -> SymbolTable {
        SymbolTable::with(&["alpha", "beta"], &["x", "y", "z"]).unwrap()
    }

    fn canon(s: &str) -> Expr {
        canonicalize(&parse_expr(s).unwrap(), &table()).unwrap()
    }

    #[test]
    fn dot_is_bilinear() {
        assert_eq!(canon("x.(y+z)"), canon("x.y + x.z"));
        assert_eq!(canon("(alpha*x).(beta*y)"), canon("alpha*beta*(x.y)"));
    }

    #[test]
    fn q_extracts_scalars_quadratically() {
        assert_eq!(canon("q(alpha*(x.y))"), canon("alpha^2*q(x.y)"));
    }

    #[test]
    fn q_polarizes_but_is_not_multiplicative() {
        assert_eq!(canon("q(x+y)"), canon("q(x) + q(y) + b(x,y)"));
        assert_ne!(canon("q(x.y)"), canon("q(x)*q(y)"));
    }

    #[test]
    fn b_pulls_signs_and_keeps_order() {
        assert_eq!(canon("b(-x, y)"), canon("-b(x,y)"));
        assert!(!equal(&canon("b(x,y)"), &canon("b(y,x)")));
    }

    #[test]
    fn zero_law() {
        assert!(canon("b(x,y)*q(x)*q(y) - b(x,y)*q(x)*q(y)").is_zero());
        assert!(canon("x.y - x.y").is_zero());
    }

    #[test]
    fn mixed_sorts_are_rejected() {
        let t = table();
        for bad in ["x + alpha", "q(alpha)", "x*y", "x^2", "alpha.x"] {
            let err = canonicalize(&parse_expr(bad).unwrap(), &t).unwrap_err();
            assert!(matches!(err, Error::Type(_)), "{bad}: {err}");
        }
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let err = canonicalize(&parse_expr("q(w)").unwrap(), &table()).unwrap_err();
        assert!(matches!(err, Error::UnknownSymbol { ref name, .. } if name == "w"));
    }

    #[test]
    fn orders() {
        let t = table();
        let x = DotWord::leaf(t.vector("x").unwrap().clone());
        let y = DotWord::leaf(t.vector("y").unwrap().clone());
        let xy = DotWord::pair(x.clone(), y.clone());
        assert_eq!(word_order(&x, &xy), Ordering::Less);
        assert_eq!(
            atom_order(
                &ScalarAtom::B(x.clone(), y.clone()),
                &ScalarAtom::B(y.clone(), x.clone())
            ),
            Ordering::Less
        );
        assert_eq!(
            atom_order(&ScalarAtom::Q(x.clone()), &ScalarAtom::B(x.clone(), x)),
            Ordering::Less
        );
    }
}
