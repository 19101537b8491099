//! Homomorphic interpretation of expressions into an arbitrary model of the
//! two-sorted signature (scalars, vectors, `.`, `q`, `b`).
//!
//! The symbolic model gives canonicalization and substitution; the
//! para-quaternion model in [`crate::oracle`] gives numeric evaluation. Raw
//! trees and canonical expressions are interpreted by separate functions so
//! the oracle can evaluate a raw tree without going through the canonical
//! form it is meant to check.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use super::word::DotWord;
use super::{Expr, Monomial, Rational, ScalarAtom, ScalarExpr, Var, VectorExpr};
use crate::error::{Error, Result, Span};
use crate::text::ast::RawExpr;

pub trait Algebra {
    type Scalar: Clone;
    type Vector: Clone;

    fn rational(&self, r: &Rational) -> Self::Scalar;
    fn add(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    fn mul(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    fn neg(&self, a: &Self::Scalar) -> Self::Scalar;

    fn vzero(&self) -> Self::Vector;
    fn vadd(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Vector;
    fn vneg(&self, a: &Self::Vector) -> Self::Vector;
    fn scale(&self, c: &Self::Scalar, v: &Self::Vector) -> Self::Vector;

    fn dot(&self, u: &Self::Vector, v: &Self::Vector) -> Self::Vector;
    fn q(&self, v: &Self::Vector) -> Self::Scalar;
    fn b(&self, u: &Self::Vector, v: &Self::Vector) -> Self::Scalar;

    fn pow(&self, a: &Self::Scalar, n: u32) -> Self::Scalar {
        let mut acc = self.rational(&Rational::one());
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// A value of either sort in model `A`.
pub enum Value<A: Algebra> {
    Scalar(A::Scalar),
    Vector(A::Vector),
}

impl<A: Algebra> Clone for Value<A> {
    fn clone(&self) -> Self {
        match self {
            Value::Scalar(s) => Value::Scalar(s.clone()),
            Value::Vector(v) => Value::Vector(v.clone()),
        }
    }
}

impl<A: Algebra> fmt::Debug for Value<A>
where
    A::Scalar: fmt::Debug,
    A::Vector: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => f.debug_tuple("Scalar").field(s).finish(),
            Value::Vector(v) => f.debug_tuple("Vector").field(v).finish(),
        }
    }
}

impl<A: Algebra> Value<A> {
    fn into_scalar(self, ctx: &str) -> Result<A::Scalar> {
        match self {
            Value::Scalar(s) => Ok(s),
            Value::Vector(_) => Err(Error::type_error(format!("{ctx} expects a scalar, found a vector"))),
        }
    }

    fn into_vector(self, ctx: &str) -> Result<A::Vector> {
        match self {
            Value::Vector(v) => Ok(v),
            Value::Scalar(_) => Err(Error::type_error(format!("{ctx} expects a vector, found a scalar"))),
        }
    }
}

/// The canonical symbolic model.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Algebra for Symbolic {
    type Scalar = ScalarExpr;
    type Vector = VectorExpr;

    fn rational(&self, r: &Rational) -> ScalarExpr {
        ScalarExpr::constant(r.clone())
    }
    fn add(&self, a: &ScalarExpr, b: &ScalarExpr) -> ScalarExpr {
        a + b
    }
    fn mul(&self, a: &ScalarExpr, b: &ScalarExpr) -> ScalarExpr {
        a * b
    }
    fn neg(&self, a: &ScalarExpr) -> ScalarExpr {
        -a
    }
    fn vzero(&self) -> VectorExpr {
        VectorExpr::zero()
    }
    fn vadd(&self, a: &VectorExpr, b: &VectorExpr) -> VectorExpr {
        a + b
    }
    fn vneg(&self, a: &VectorExpr) -> VectorExpr {
        -a
    }
    fn scale(&self, c: &ScalarExpr, v: &VectorExpr) -> VectorExpr {
        v.scale(c)
    }
    fn dot(&self, u: &VectorExpr, v: &VectorExpr) -> VectorExpr {
        u.dot(v)
    }
    fn q(&self, v: &VectorExpr) -> ScalarExpr {
        v.q()
    }
    fn b(&self, u: &VectorExpr, v: &VectorExpr) -> ScalarExpr {
        u.b(v)
    }
    fn pow(&self, a: &ScalarExpr, n: u32) -> ScalarExpr {
        a.pow(n)
    }
}

impl From<Value<Symbolic>> for Expr {
    fn from(v: Value<Symbolic>) -> Expr {
        match v {
            Value::Scalar(s) => Expr::Scalar(s),
            Value::Vector(v) => Expr::Vector(v),
        }
    }
}

impl From<Expr> for Value<Symbolic> {
    fn from(e: Expr) -> Self {
        match e {
            Expr::Scalar(s) => Value::Scalar(s),
            Expr::Vector(v) => Value::Vector(v),
        }
    }
}

/// Interprets a raw tree. `resolve` supplies the value of each identifier.
pub fn interpret_raw<A: Algebra>(
    raw: &RawExpr,
    alg: &A,
    resolve: &mut dyn FnMut(&str, Span) -> Result<Value<A>>,
) -> Result<Value<A>> {
    Ok(match raw {
        RawExpr::Num(r) => Value::Scalar(alg.rational(r)),
        RawExpr::Ident(id) => resolve(&id.name, id.span)?,
        RawExpr::Neg(x) => match interpret_raw(x, alg, resolve)? {
            Value::Scalar(s) => Value::Scalar(alg.neg(&s)),
            Value::Vector(v) => Value::Vector(alg.vneg(&v)),
        },
        RawExpr::Sum(items) => {
            let mut acc: Option<Value<A>> = None;
            for item in items {
                let v = interpret_raw(item, alg, resolve)?;
                acc = Some(match (acc, v) {
                    (None, v) => v,
                    (Some(Value::Scalar(a)), Value::Scalar(b)) => Value::Scalar(alg.add(&a, &b)),
                    (Some(Value::Vector(a)), Value::Vector(b)) => Value::Vector(alg.vadd(&a, &b)),
                    _ => return Err(Error::type_error("cannot add a scalar and a vector")),
                });
            }
            acc.unwrap_or_else(|| Value::Scalar(alg.rational(&Rational::from_integer(0.into()))))
        }
        RawExpr::Mul(items) => {
            let mut scalar = alg.rational(&Rational::one());
            let mut vector: Option<A::Vector> = None;
            for item in items {
                match interpret_raw(item, alg, resolve)? {
                    Value::Scalar(s) => scalar = alg.mul(&scalar, &s),
                    Value::Vector(v) => {
                        if vector.is_some() {
                            return Err(Error::type_error(
                                "product of two vectors with `*`; use `.` for the algebra product",
                            ));
                        }
                        vector = Some(v);
                    }
                }
            }
            match vector {
                Some(v) => Value::Vector(alg.scale(&scalar, &v)),
                None => Value::Scalar(scalar),
            }
        }
        RawExpr::Dot(l, r) => {
            let l = interpret_raw(l, alg, resolve)?.into_vector("`.`")?;
            let r = interpret_raw(r, alg, resolve)?.into_vector("`.`")?;
            Value::Vector(alg.dot(&l, &r))
        }
        RawExpr::Q(x) => {
            let x = interpret_raw(x, alg, resolve)?.into_vector("q")?;
            Value::Scalar(alg.q(&x))
        }
        RawExpr::B(l, r) => {
            let l = interpret_raw(l, alg, resolve)?.into_vector("b")?;
            let r = interpret_raw(r, alg, resolve)?.into_vector("b")?;
            Value::Scalar(alg.b(&l, &r))
        }
        RawExpr::Pow(x, n) => {
            let x = interpret_raw(x, alg, resolve)?.into_scalar("`^`")?;
            Value::Scalar(alg.pow(&x, *n))
        }
    })
}

/// Interprets a canonical expression, resolving symbols through `leaf`.
pub fn interpret<A: Algebra>(e: &Expr, alg: &A, leaf: &mut dyn FnMut(&Var) -> Result<Value<A>>) -> Result<Value<A>> {
    let mut interp = Interpreter {
        alg,
        leaf,
        words: HashMap::new(),
    };
    match e {
        Expr::Scalar(s) => Ok(Value::Scalar(interp.scalar(s)?)),
        Expr::Vector(v) => Ok(Value::Vector(interp.vector(v)?)),
    }
}

struct Interpreter<'a, A: Algebra> {
    alg: &'a A,
    leaf: &'a mut dyn FnMut(&Var) -> Result<Value<A>>,
    words: HashMap<DotWord, A::Vector>,
}

impl<A: Algebra> Interpreter<'_, A> {
    fn word(&mut self, w: &DotWord) -> Result<A::Vector> {
        if let Some(v) = self.words.get(w) {
            return Ok(v.clone());
        }
        let v = match w {
            DotWord::Leaf(var) => (self.leaf)(var)?.into_vector(var.name())?,
            DotWord::Pair(l, r) => {
                let l = self.word(l)?;
                let r = self.word(r)?;
                self.alg.dot(&l, &r)
            }
        };
        self.words.insert(w.clone(), v.clone());
        Ok(v)
    }

    fn atom(&mut self, a: &ScalarAtom) -> Result<A::Scalar> {
        Ok(match a {
            ScalarAtom::Sym(v) => (self.leaf)(v)?.into_scalar(v.name())?,
            ScalarAtom::Q(w) => {
                let w = self.word(w)?;
                self.alg.q(&w)
            }
            ScalarAtom::B(u, v) => {
                let u = self.word(u)?;
                let v = self.word(v)?;
                self.alg.b(&u, &v)
            }
        })
    }

    fn monomial(&mut self, m: &Monomial, c: &Rational) -> Result<A::Scalar> {
        let mut acc = self.alg.rational(c);
        for (a, e) in m.factors() {
            let v = self.atom(a)?;
            acc = self.alg.mul(&acc, &self.alg.pow(&v, *e));
        }
        Ok(acc)
    }

    fn scalar(&mut self, s: &ScalarExpr) -> Result<A::Scalar> {
        let mut acc = self.alg.rational(&Rational::from_integer(0.into()));
        for (m, c) in s.terms() {
            let t = self.monomial(m, c)?;
            acc = self.alg.add(&acc, &t);
        }
        Ok(acc)
    }

    fn vector(&mut self, v: &VectorExpr) -> Result<A::Vector> {
        let mut acc = self.alg.vzero();
        for (w, c) in v.terms() {
            let c = self.scalar(c)?;
            let w = self.word(w)?;
            acc = self.alg.vadd(&acc, &self.alg.scale(&c, &w));
        }
        Ok(acc)
    }
}
