use std::fmt::Write;

use num_traits::{One, Signed};

use super::ast::RawExpr;
use crate::expr::{Expr, Monomial, Rational, ScalarAtom, ScalarExpr, VectorExpr};

/// Prints a canonical expression in the input syntax.
///
/// Terms come out in canonical order, a leading `+` is omitted, rationals are
/// written `p/q`, and every nested product is parenthesized. The output
/// parses back to the same canonical value.
pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Scalar(s) => print_scalar(s),
        Expr::Vector(v) => print_vector(v),
    }
}

pub fn print_scalar(s: &ScalarExpr) -> String {
    let mut out = String::new();
    for (m, c) in s.terms() {
        push_term(&mut out, c, monomial_factors(m), None);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn print_vector(v: &VectorExpr) -> String {
    let mut out = String::new();
    for (w, coeff) in v.terms() {
        let word = match w.as_leaf() {
            Some(_) => w.to_string(),
            None => format!("({w})"),
        };
        for (m, c) in coeff.terms() {
            push_term(&mut out, c, monomial_factors(m), Some(&word));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn print_atom(a: &ScalarAtom) -> String {
    match a {
        ScalarAtom::Sym(v) => v.name().to_string(),
        ScalarAtom::Q(w) => format!("q({w})"),
        ScalarAtom::B(u, v) => format!("b({u},{v})"),
    }
}

fn monomial_factors(m: &Monomial) -> Vec<String> {
    m.factors()
        .iter()
        .map(|(a, e)| {
            if *e == 1 {
                print_atom(a)
            } else {
                format!("{}^{e}", print_atom(a))
            }
        })
        .collect()
}

fn push_term(out: &mut String, c: &Rational, mut factors: Vec<String>, word: Option<&str>) {
    let neg = c.is_negative();
    let mag = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if let Some(w) = word {
        factors.push(w.to_string());
    }
    if factors.is_empty() || !mag.is_one() {
        factors.insert(0, print_rational(&mag));
    }
    let _ = write!(out, "{}", factors.join("*"));
}

/// Prints a parse tree so that it parses back to the same tree.
pub fn print_raw(e: &RawExpr) -> String {
    let mut out = String::new();
    raw(&mut out, e);
    out
}

fn raw(out: &mut String, e: &RawExpr) {
    match e {
        RawExpr::Sum(items) => {
            for (i, item) in items.iter().enumerate() {
                match item {
                    RawExpr::Neg(x) => {
                        out.push_str(if i == 0 { "-" } else { " - " });
                        raw_wrapped(out, x, matches!(**x, RawExpr::Sum(_)));
                    }
                    other => {
                        if i > 0 {
                            out.push_str(" + ");
                        }
                        raw_wrapped(out, other, matches!(other, RawExpr::Sum(_)));
                    }
                }
            }
        }
        RawExpr::Neg(x) => {
            // Unary minus binds tighter than `*`.
            out.push('-');
            raw_wrapped(out, x, matches!(**x, RawExpr::Sum(_) | RawExpr::Mul(_)));
        }
        RawExpr::Mul(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push('*');
                }
                raw_wrapped(
                    out,
                    item,
                    matches!(item, RawExpr::Sum(_) | RawExpr::Neg(_) | RawExpr::Mul(_)),
                );
            }
        }
        RawExpr::Dot(l, r) => {
            raw_wrapped(out, l, !matches!(**l, RawExpr::Ident(_)));
            out.push('.');
            raw_wrapped(out, r, !matches!(**r, RawExpr::Ident(_)));
        }
        RawExpr::Q(x) => {
            out.push_str("q(");
            raw(out, x);
            out.push(')');
        }
        RawExpr::B(l, r) => {
            out.push_str("b(");
            raw(out, l);
            out.push_str(", ");
            raw(out, r);
            out.push(')');
        }
        RawExpr::Pow(x, n) => {
            let bare = match &**x {
                RawExpr::Ident(_) | RawExpr::Q(_) | RawExpr::B(..) => true,
                RawExpr::Num(r) => !r.is_negative(),
                _ => false,
            };
            raw_wrapped(out, x, !bare);
            let _ = write!(out, "^{n}");
        }
        RawExpr::Num(r) => {
            if r.is_negative() {
                let _ = write!(out, "(-{})", print_rational(&r.abs()));
            } else {
                out.push_str(&print_rational(r));
            }
        }
        RawExpr::Ident(id) => out.push_str(&id.name),
    }
}

fn raw_wrapped(out: &mut String, e: &RawExpr, parens: bool) {
    if parens {
        out.push('(');
        raw(out, e);
        out.push(')');
    } else {
        raw(out, e);
    }
}

fn print_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{canonicalize, SymbolTable};
    use crate::text::parse_expr;

    fn roundtrip(s: &str) -> String {
        let t = SymbolTable::with(&["alpha", "beta"], &["x", "y"]).unwrap();
        print_expr(&canonicalize(&parse_expr(s).unwrap(), &t).unwrap())
    }

    #[test]
    fn doubled_b() {
        assert_eq!(roundtrip("b(x,y)+b(x,y)"), "2*b(x,y)");
    }

    #[test]
    fn signs_and_rationals() {
        assert_eq!(roundtrip("-3/2*alpha + 0*beta"), "-3/2*alpha");
        assert_eq!(roundtrip("q(x) - 1"), "-1 + q(x)");
        assert_eq!(roundtrip("x - x"), "0");
    }

    #[test]
    fn nested_products_are_parenthesized() {
        assert_eq!(roundtrip("b(x.(x.y), (y.y).x)"), "b(x.(x.y),(y.y).x)");
        assert_eq!(roundtrip("alpha*(x.y).x + q(x)*y"), "q(x)*y + alpha*((x.y).x)");
    }

    #[test]
    fn raw_trees_round_trip() {
        for s in [
            "q(x.y) - q(x)*q(y)",
            "-(alpha + beta)*x - -y",
            "(-alpha)*(x.(y.x)) + (q(x) - 1)^3",
            "b(x.y, (y.x).(y.x)) - 3/4*b(x, y)^2",
            "((x + y).x).(alpha*y)",
        ] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&print_raw(&e)).unwrap(), e, "{s}");
        }
    }
}
