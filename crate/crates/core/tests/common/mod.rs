//! Random well-sorted expressions over scalars alpha, beta and vectors x, y, z.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use symcomp::expr::{canonicalize, Expr, SymbolTable};
use symcomp::text::RawExpr;

pub const SCALARS: &[&str] = &["alpha", "beta"];
pub const VECTORS: &[&str] = &["x", "y", "z"];

pub fn table() -> SymbolTable {
    SymbolTable::with(SCALARS, VECTORS).unwrap()
}

fn num() -> impl Strategy<Value = RawExpr> {
    prop_oneof![
        (0i64..5).prop_map(|n| RawExpr::Num(BigRational::from_integer(BigInt::from(n)))),
        (1i64..5, 2i64..5).prop_map(|(p, q)| RawExpr::Num(BigRational::new(BigInt::from(p), BigInt::from(q)))),
    ]
}

pub fn scalar(depth: u32) -> BoxedStrategy<RawExpr> {
    let leaf = prop_oneof![num(), prop::sample::select(SCALARS).prop_map(RawExpr::ident)];
    if depth == 0 {
        return leaf.boxed();
    }
    let s = || scalar(depth - 1);
    let v = || vector(depth - 1);
    prop_oneof![
        2 => leaf,
        1 => prop::collection::vec(s(), 2..4).prop_map(RawExpr::Sum),
        1 => s().prop_map(RawExpr::negate),
        1 => prop::collection::vec(s(), 2..3).prop_map(RawExpr::Mul),
        1 => (s(), 2u32..4).prop_map(|(b, n)| RawExpr::Pow(Box::new(b), n)),
        2 => v().prop_map(RawExpr::q),
        2 => (v(), v()).prop_map(|(a, b)| RawExpr::b(a, b)),
    ]
    .boxed()
}

pub fn vector(depth: u32) -> BoxedStrategy<RawExpr> {
    let leaf = prop::sample::select(VECTORS).prop_map(RawExpr::ident);
    if depth == 0 {
        return leaf.boxed();
    }
    let s = || scalar(depth - 1);
    let v = || vector(depth - 1);
    prop_oneof![
        2 => leaf,
        1 => prop::collection::vec(v(), 2..4).prop_map(RawExpr::Sum),
        1 => v().prop_map(RawExpr::negate),
        1 => (s(), v(), any::<bool>()).prop_map(|(c, x, front)| RawExpr::Mul(if front { vec![c, x] } else { vec![x, c] })),
        3 => (v(), v()).prop_map(|(a, b)| RawExpr::dot(a, b)),
    ]
    .boxed()
}

pub fn raw(depth: u32) -> BoxedStrategy<RawExpr> {
    prop_oneof![scalar(depth), vector(depth)].boxed()
}

pub fn canon(raw: &RawExpr) -> Expr {
    canonicalize(raw, &table()).expect("generated expressions are well sorted")
}
