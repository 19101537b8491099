use crate::error::Span;
use crate::expr::Rational;

/// Identifier occurrence. Equality ignores the span.
#[derive(Clone, Debug, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>, span: Span) -> Self {
        Ident {
            name: name.into(),
            span,
        }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// Unrestricted parse tree. Sorts are not checked until canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawExpr {
    Sum(Vec<RawExpr>),
    Neg(Box<RawExpr>),
    Mul(Vec<RawExpr>),
    Dot(Box<RawExpr>, Box<RawExpr>),
    Q(Box<RawExpr>),
    B(Box<RawExpr>, Box<RawExpr>),
    Pow(Box<RawExpr>, u32),
    Num(Rational),
    Ident(Ident),
}

impl RawExpr {
    pub fn ident(name: &str) -> RawExpr {
        RawExpr::Ident(Ident::new(name, Span::default()))
    }

    pub fn dot(l: RawExpr, r: RawExpr) -> RawExpr {
        RawExpr::Dot(Box::new(l), Box::new(r))
    }

    pub fn q(x: RawExpr) -> RawExpr {
        RawExpr::Q(Box::new(x))
    }

    pub fn b(l: RawExpr, r: RawExpr) -> RawExpr {
        RawExpr::B(Box::new(l), Box::new(r))
    }

    pub fn negate(x: RawExpr) -> RawExpr {
        RawExpr::Neg(Box::new(x))
    }

    /// Every identifier in the tree, left to right.
    pub fn idents(&self) -> Vec<&Ident> {
        let mut out = Vec::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents<'a>(&'a self, out: &mut Vec<&'a Ident>) {
        match self {
            RawExpr::Sum(xs) | RawExpr::Mul(xs) => xs.iter().for_each(|x| x.collect_idents(out)),
            RawExpr::Neg(x) | RawExpr::Q(x) | RawExpr::Pow(x, _) => x.collect_idents(out),
            RawExpr::Dot(l, r) | RawExpr::B(l, r) => {
                l.collect_idents(out);
                r.collect_idents(out);
            }
            RawExpr::Num(_) => {}
            RawExpr::Ident(id) => out.push(id),
        }
    }
}
