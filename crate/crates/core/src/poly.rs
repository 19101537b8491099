//! Polynomial-level operations: substitution, coefficient extraction,
//! coefficient matrices, and checking a factored form by expansion.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{interpret, Expr, ScalarAtom, ScalarExpr, Sort, Symbolic, Value, Var, VectorExpr};
use crate::text::print_expr;

/// Simultaneous substitution of symbols, followed by canonicalization.
pub fn subst(e: &Expr, bindings: &[(Var, Expr)]) -> Result<Expr> {
    let map: BTreeMap<&Var, &Expr> = bindings.iter().map(|(v, x)| (v, x)).collect();
    let sorts = e.symbol_sorts();
    let v = interpret(e, &Symbolic, &mut |var| {
        Ok(match map.get(var) {
            Some(x) => Value::from((*x).clone()),
            None if sorts.get(var) == Some(&Sort::Scalar) => Value::Scalar(ScalarExpr::symbol(var.clone())),
            None => Value::Vector(VectorExpr::symbol(var.clone())),
        })
    });
    v.map(Expr::from).map_err(|err| match err {
        Error::Type(m) => Error::Type(format!("substitution changes the sort of a symbol: {m}")),
        other => other,
    })
}

/// Checks that every binding has the sort of its symbol.
pub fn check_sorts(bindings: &[(Var, Sort, Expr)]) -> Result<()> {
    for (v, sort, x) in bindings {
        if x.sort() != *sort {
            return Err(Error::type_error(format!(
                "`{}` is a {sort} symbol but is bound to a {}",
                v.name(),
                x.sort()
            )));
        }
    }
    Ok(())
}

fn coeff_scalar(s: &ScalarExpr, key: &[(Var, u32)]) -> ScalarExpr {
    s.filter_map_terms(|m| {
        let mut out = m.clone();
        for (v, e) in key {
            let atom = ScalarAtom::Sym(v.clone());
            if m.exponent(&atom) != *e {
                return None;
            }
            out = out.without_atom(&atom);
        }
        Some(out)
    })
}

/// Exact-degree coefficient: the terms whose exponents in the key's symbols
/// are exactly the key's exponents, with those powers removed. An exponent
/// of 0 selects the terms free of that symbol.
pub fn coeff(e: &Expr, key: &[(Var, u32)]) -> Expr {
    match e {
        Expr::Scalar(s) => Expr::Scalar(coeff_scalar(s, key)),
        Expr::Vector(v) => Expr::Vector(v.map_coefficients(|c| coeff_scalar(c, key))),
    }
}

fn max_degree(e: &Expr, v: &Var) -> u32 {
    let atom = ScalarAtom::Sym(v.clone());
    let deg = |s: &ScalarExpr| s.terms().map(|(m, _)| m.exponent(&atom)).max().unwrap_or(0);
    match e {
        Expr::Scalar(s) => deg(s),
        Expr::Vector(v) => v.terms().map(|(_, c)| deg(c)).max().unwrap_or(0),
    }
}

/// Coefficients of a polynomial in two scalar symbols. Row `i`, column `j`
/// holds the coefficient of `vars[0]^i * vars[1]^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    pub vars: [Var; 2],
    pub rows: Vec<Vec<Expr>>,
}

#[derive(Serialize)]
struct CoeffMatrixJson<'a> {
    vars: [&'a str; 2],
    rows: Vec<Vec<String>>,
}

impl CoeffMatrix {
    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Expr> {
        self.rows.get(i)?.get(j)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = CoeffMatrixJson {
            vars: [self.vars[0].name(), self.vars[1].name()],
            rows: self.rows.iter().map(|r| r.iter().map(print_expr).collect()).collect(),
        };
        serde_json::to_value(json).expect("matrix serializes")
    }

    /// `sum vars[0]^i * vars[1]^j * rows[i][j]`.
    pub fn reconstruct(&self) -> Expr {
        let mut acc: Option<Expr> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let mono = &ScalarExpr::symbol(self.vars[0].clone()).pow(i as u32)
                    * &ScalarExpr::symbol(self.vars[1].clone()).pow(j as u32);
                let t = c.scale(&mono);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t).expect("entries share a sort"),
                });
            }
        }
        acc.expect("a matrix has at least one entry")
    }
}

pub fn coeff_matrix(e: &Expr, vars: [Var; 2]) -> CoeffMatrix {
    let (n, m) = (max_degree(e, &vars[0]), max_degree(e, &vars[1]));
    let rows = (0..=n)
        .map(|i| {
            (0..=m)
                .map(|j| coeff(e, &[(vars[0].clone(), i), (vars[1].clone(), j)]))
                .collect()
        })
        .collect();
    CoeffMatrix { vars, rows }
}

/// Checks a displayed factored form by expanding it: true iff `target`
/// canonicalizes to `e`.
pub fn factored_equal(e: &Expr, target: &Expr) -> Result<bool> {
    if e.sort() != target.sort() {
        return Err(Error::type_error(format!(
            "cannot compare a {} with a {}",
            e.sort(),
            target.sort()
        )));
    }
    Ok(e == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{canonicalize, SymbolTable};
    use crate::text::parse_expr;

    fn table() -> SymbolTable {
        SymbolTable::with(&["alpha", "beta", "lambda", "mu"], &["x", "y", "z1", "z2", "z3", "z4"]).unwrap()
    }

    fn canon(s: &str) -> Expr {
        canonicalize(&parse_expr(s).unwrap(), &table()).unwrap()
    }

    fn var(n: &str) -> Var {
        table().get(n).unwrap().0.clone()
    }

    #[test]
    fn subst_is_simultaneous() {
        let e = canon("b(x,y)");
        let out = subst(&e, &[(var("x"), canon("y")), (var("y"), canon("x"))]).unwrap();
        assert_eq!(out, canon("b(y,x)"));
        assert_eq!(subst(&e, &[]).unwrap(), e);
    }

    #[test]
    fn subst_scalars() {
        let e = canon("alpha*q(x) + beta*b(x,y)");
        let out = subst(&e, &[(var("beta"), canon("1 - alpha"))]).unwrap();
        assert_eq!(out, canon("alpha*q(x) + b(x,y) - alpha*b(x,y)"));
    }

    #[test]
    fn subst_sort_mismatch() {
        let e = canon("q(x)");
        assert!(matches!(subst(&e, &[(var("x"), canon("alpha"))]), Err(Error::Type(_))));
    }

    #[test]
    fn coeff_exact_degree() {
        let e = canon("lambda*mu^2*q(x) + lambda*mu*q(y) + lambda^2*mu^2*b(x,y) + 3*lambda*mu^2");
        assert_eq!(coeff(&e, &[(var("lambda"), 1), (var("mu"), 2)]), canon("q(x) + 3"));
        assert!(coeff(&canon("q(x)"), &[(var("lambda"), 1)]).is_zero());
        assert_eq!(coeff(&e, &[(var("lambda"), 2)]), canon("mu^2*b(x,y)"));
    }

    #[test]
    fn zero_matrix() {
        let m = coeff_matrix(&canon("0"), [var("alpha"), var("beta")]);
        assert_eq!(m.dims(), (1, 1));
        assert!(m.rows[0][0].is_zero());
        assert_eq!(
            m.to_json(),
            serde_json::json!({"vars": ["alpha", "beta"], "rows": [["0"]]})
        );
    }

    #[test]
    fn vector_matrix_and_reconstruction() {
        let e = canon("(x.y).x - q(x)*y");
        let lin = subst(
            &e,
            &[(var("x"), canon("z1 + alpha*z2")), (var("y"), canon("z3 + beta*z4"))],
        )
        .unwrap();
        let m = coeff_matrix(&lin, [var("alpha"), var("beta")]);
        assert_eq!(m.dims(), (3, 2));
        assert_eq!(m.rows[1][0], canon("(z1.z3).z2 + (z2.z3).z1 - b(z1,z2)*z3"));
        assert_eq!(m.reconstruct(), lin);
    }

    #[test]
    fn factored_forms() {
        let e = canon("3*alpha*b(y,x.x) + 3*beta*b(y,x.x) - 3*b(y,x.x)");
        assert!(factored_equal(&e, &canon("3*(alpha + beta - 1)*b(y, x.x)")).unwrap());
        assert!(!factored_equal(&e, &canon("3*(alpha + beta)*b(y, x.x)")).unwrap());
        assert!(factored_equal(&canon("0"), &canon("0")).unwrap());
        assert!(factored_equal(&canon("x"), &canon("q(x)")).is_err());
    }
}
