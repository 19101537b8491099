//! Exact numeric model: the para-quaternions.
//!
//! Vectors are rational quaternions with the product `u * v = conj(u) conj(v)`,
//! `q` is the quaternion norm and `b` its polarization. This is a symmetric
//! composition algebra, so every identity the engine proves must evaluate to
//! exactly zero here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::{interpret, interpret_raw, Algebra, DotWord, Expr, Rational, Sort, SymbolTable, Value, Var};
use crate::rewrite::RewriteRule;
use crate::text::{print_expr, RawExpr};

/// A rational quaternion `a + b i + c j + d k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParaQuaternion(pub [Rational; 4]);

impl ParaQuaternion {
    pub fn new(c: [Rational; 4]) -> Self {
        ParaQuaternion(c)
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        ParaQuaternion(c.map(|x| Rational::from_integer(x.into())))
    }

    pub fn zero() -> Self {
        Self::from_ints([0, 0, 0, 0])
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn i() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    pub fn j() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    pub fn k() -> Self {
        Self::from_ints([0, 0, 0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.0;
        ParaQuaternion([a.clone(), -b, -c, -d])
    }

    /// The ordinary (associative) quaternion product.
    pub fn quat_mul(&self, o: &Self) -> Self {
        let [a1, b1, c1, d1] = &self.0;
        let [a2, b2, c2, d2] = &o.0;
        ParaQuaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }

    pub fn norm(&self) -> Rational {
        self.0.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b)
    }

    /// `norm(u + v) - norm(u) - norm(v)`.
    pub fn polar(&self, o: &Self) -> Rational {
        let two = Rational::from_integer(2.into());
        self.0
            .iter()
            .zip(&o.0)
            .map(|(x, y)| x * y)
            .fold(Rational::zero(), |a, b| a + b)
            * two
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ParaQuaternion(self.0.clone().map(|x| x * c))
    }
}

impl Add for &ParaQuaternion {
    type Output = ParaQuaternion;
    fn add(self, o: &ParaQuaternion) -> ParaQuaternion {
        ParaQuaternion(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &ParaQuaternion {
    type Output = ParaQuaternion;
    fn sub(self, o: &ParaQuaternion) -> ParaQuaternion {
        ParaQuaternion(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &ParaQuaternion {
    type Output = ParaQuaternion;
    fn neg(self) -> ParaQuaternion {
        ParaQuaternion(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl Mul for &ParaQuaternion {
    type Output = ParaQuaternion;
    fn mul(self, o: &ParaQuaternion) -> ParaQuaternion {
        pq_mul(self, o)
    }
}

impl fmt::Display for ParaQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Serialize for ParaQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.serialize(s)
    }
}

/// The para-Hurwitz product `conj(u) conj(v)`.
pub fn pq_mul(u: &ParaQuaternion, v: &ParaQuaternion) -> ParaQuaternion {
    u.conj().quat_mul(&v.conj())
}

/// The para-quaternion model of the signature.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParaHurwitz;

impl Algebra for ParaHurwitz {
    type Scalar = Rational;
    type Vector = ParaQuaternion;

    fn rational(&self, r: &Rational) -> Rational {
        r.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn vzero(&self) -> ParaQuaternion {
        ParaQuaternion::zero()
    }
    fn vadd(&self, a: &ParaQuaternion, b: &ParaQuaternion) -> ParaQuaternion {
        a + b
    }
    fn vneg(&self, a: &ParaQuaternion) -> ParaQuaternion {
        -a
    }
    fn scale(&self, c: &Rational, v: &ParaQuaternion) -> ParaQuaternion {
        v.scale(c)
    }
    fn dot(&self, u: &ParaQuaternion, v: &ParaQuaternion) -> ParaQuaternion {
        pq_mul(u, v)
    }
    fn q(&self, v: &ParaQuaternion) -> Rational {
        v.norm()
    }
    fn b(&self, u: &ParaQuaternion, v: &ParaQuaternion) -> Rational {
        u.polar(v)
    }
}

/// Values for the symbols of an expression.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Assignment {
    #[serde(serialize_with = "rationals_as_strings")]
    pub scalars: BTreeMap<String, Rational>,
    pub vectors: BTreeMap<String, ParaQuaternion>,
}

fn rationals_as_strings<S: Serializer>(m: &BTreeMap<String, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.iter()
        .map(|(k, v)| (k.clone(), v.to_string()))
        .collect::<BTreeMap<_, _>>()
        .serialize(s)
}

impl Assignment {
    fn lookup(&self, name: &str) -> Result<Value<ParaHurwitz>> {
        if let Some(v) = self.vectors.get(name) {
            return Ok(Value::Vector(v.clone()));
        }
        if let Some(s) = self.scalars.get(name) {
            return Ok(Value::Scalar(s.clone()));
        }
        Err(Error::MissingSymbol(name.to_string()))
    }

    /// Draws every component uniformly from the integers in [-9, 9].
    pub fn random<'a>(symbols: impl IntoIterator<Item = (&'a str, Sort)>, rng: &mut impl Rng) -> Self {
        let mut a = Assignment::default();
        let draw = |rng: &mut dyn rand::RngCore| Rational::from_integer(rng.gen_range(-9i64..=9).into());
        for (name, sort) in symbols {
            match sort {
                Sort::Scalar => {
                    a.scalars.insert(name.to_string(), draw(rng));
                }
                Sort::Vector => {
                    let c = [draw(rng), draw(rng), draw(rng), draw(rng)];
                    a.vectors.insert(name.to_string(), ParaQuaternion(c));
                }
            }
        }
        a
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.scalars {
            write!(f, "{}{k} = {v}", if first { "" } else { ", " })?;
            first = false;
        }
        for (k, v) in &self.vectors {
            write!(f, "{}{k} = {v}", if first { "" } else { ", " })?;
            first = false;
        }
        Ok(())
    }
}

/// Evaluates a canonical expression.
pub fn eval(e: &Expr, a: &Assignment) -> Result<Value<ParaHurwitz>> {
    interpret(e, &ParaHurwitz, &mut |v: &Var| a.lookup(v.name()))
}

/// Evaluates a parse tree directly, without canonicalizing it.
pub fn eval_raw(raw: &RawExpr, symbols: &SymbolTable, a: &Assignment) -> Result<Value<ParaHurwitz>> {
    interpret_raw(raw, &ParaHurwitz, &mut |name, span| {
        if symbols.get(name).is_none() {
            return Err(Error::UnknownSymbol {
                name: name.to_string(),
                span,
            });
        }
        a.lookup(name)
    })
}

pub fn is_zero(v: &Value<ParaHurwitz>) -> bool {
    match v {
        Value::Scalar(s) => s.is_zero(),
        Value::Vector(v) => v.is_zero(),
    }
}

fn show(v: &Value<ParaHurwitz>) -> String {
    match v {
        Value::Scalar(s) => s.to_string(),
        Value::Vector(v) => v.to_string(),
    }
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Outcome of a randomized identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub identity: String,
    pub trials: u32,
    pub pass: bool,
    pub counterexample: Option<Assignment>,
    #[serde(skip)]
    pub value: Option<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "pass: {} is zero in {} trial(s)", self.identity, self.trials)
        } else {
            write!(f, "FAIL: {}", self.identity)?;
            if let (Some(a), Some(v)) = (&self.counterexample, &self.value) {
                write!(f, "\n  counterexample: {a}\n  value: {v}")?;
            }
            Ok(())
        }
    }
}

fn run_trials(
    identity: String,
    symbols: &[(String, Sort)],
    trials: u32,
    seed: u64,
    mut f: impl FnMut(&Assignment, &mut ChaCha8Rng) -> Result<Value<ParaHurwitz>>,
) -> Result<Report> {
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let a = Assignment::random(symbols.iter().map(|(n, s)| (n.as_str(), *s)), &mut rng);
        let v = f(&a, &mut rng)?;
        if !is_zero(&v) {
            return Ok(Report {
                identity,
                trials,
                pass: false,
                counterexample: Some(a),
                value: Some(show(&v)),
            });
        }
    }
    Ok(Report {
        identity,
        trials,
        pass: true,
        counterexample: None,
        value: None,
    })
}

/// Evaluates `e` under `trials` random assignments; passes iff every value
/// is exactly zero.
pub fn check_identity(e: &Expr, trials: u32, seed: u64) -> Report {
    let symbols: Vec<(String, Sort)> = e
        .symbol_sorts()
        .into_iter()
        .map(|(v, s)| (v.name().to_string(), s))
        .collect();
    run_trials(print_expr(e), &symbols, trials, seed, |a, _| eval(e, a))
        .expect("every symbol of the expression is assigned")
}

/// Like [`check_identity`], evaluating the parse tree directly.
pub fn check_identity_raw(raw: &RawExpr, symbols: &SymbolTable, trials: u32, seed: u64) -> Result<Report> {
    let syms: Vec<(String, Sort)> = symbols.iter().map(|(v, s)| (v.name().to_string(), s)).collect();
    run_trials(crate::text::print_raw(raw), &syms, trials, seed, |a, _| {
        eval_raw(raw, symbols, a)
    })
}

/// A random dot-word of depth at most `depth` over `leaves`.
pub fn random_word(leaves: &[Var], depth: usize, rng: &mut impl Rng) -> DotWord {
    if depth == 0 || rng.gen_bool(0.3) {
        return DotWord::leaf(leaves[rng.gen_range(0..leaves.len())].clone());
    }
    DotWord::pair(random_word(leaves, depth - 1, rng), random_word(leaves, depth - 1, rng))
}

/// Checks `lhs - rhs` of a rule with its pattern variables bound to random
/// dot-words of depth at most 2 over four vector symbols (including the
/// literals `x` and `y`).
pub fn check_rule(rule: &RewriteRule, trials: u32, seed: u64) -> Result<Report> {
    let names = ["x", "y", "z", "w"];
    let leaves: Vec<Var> = names.iter().enumerate().map(|(i, n)| Var::new(i as u32, n)).collect();
    let symbols: Vec<(String, Sort)> = names.iter().map(|n| (n.to_string(), Sort::Vector)).collect();
    let diff = RawExpr::Sum(vec![rule.lhs().clone(), RawExpr::negate(rule.rhs().clone())]);
    run_trials(rule.to_string(), &symbols, trials, seed, |a, rng| {
        let mut bound = BTreeMap::new();
        for v in rule.vars() {
            let w = random_word(&leaves, 2, rng);
            let value = eval(&Expr::Vector(crate::expr::VectorExpr::word(w)), a)?;
            bound.insert(v.clone(), value);
        }
        interpret_raw(&diff, &ParaHurwitz, &mut |name, _| match bound.get(name) {
            Some(v) => Ok(v.clone()),
            None => a.lookup(name),
        })
    })
}

impl PartialEq for Value<ParaHurwitz> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => a == b,
            (Value::Vector(a), Value::Vector(b)) => a == b,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::canonicalize;
    use crate::rewrite::{builtin_ruleset, BUILTIN_NAMES};
    use crate::text::parse_expr;

    fn table() -> SymbolTable {
        SymbolTable::with(&["alpha"], &["x", "y", "z"]).unwrap()
    }

    fn canon(s: &str) -> Expr {
        canonicalize(&parse_expr(s).unwrap(), &table()).unwrap()
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(
            pq_mul(&ParaQuaternion::one(), &ParaQuaternion::one()),
            ParaQuaternion::one()
        );
        assert_eq!(pq_mul(&ParaQuaternion::i(), &ParaQuaternion::j()), ParaQuaternion::k());
        let two_k = ParaQuaternion::from_ints([0, 0, 0, 2]);
        assert_eq!(
            &pq_mul(&ParaQuaternion::i(), &ParaQuaternion::j()) - &pq_mul(&ParaQuaternion::j(), &ParaQuaternion::i()),
            two_k
        );
    }

    #[test]
    fn composition_and_flexibility() {
        for t in 0..100 {
            let mut rng = trial_rng(7, t);
            let a = Assignment::random(
                [("u", Sort::Vector), ("v", Sort::Vector), ("w", Sort::Vector)],
                &mut rng,
            );
            let (u, v, w) = (&a.vectors["u"], &a.vectors["v"], &a.vectors["w"]);
            assert_eq!(pq_mul(u, v).norm(), u.norm() * v.norm());
            assert_eq!(pq_mul(&pq_mul(u, v), u), v.scale(&u.norm()));
            assert_eq!(pq_mul(u, &pq_mul(v, u)), v.scale(&u.norm()));
            assert_eq!(pq_mul(u, v).polar(w), u.polar(&pq_mul(v, w)));
        }
    }

    #[test]
    fn eval_basics() {
        let mut a = Assignment::default();
        a.vectors.insert("x".into(), ParaQuaternion::one());
        assert_eq!(
            eval(&canon("q(x)"), &a).unwrap(),
            Value::Scalar(Rational::from_integer(1.into()))
        );
        assert_eq!(eval(&canon("q(y)"), &a).unwrap_err(), Error::MissingSymbol("y".into()));
    }

    #[test]
    fn identity_reports() {
        assert!(check_identity(&canon("q(x.y) - q(x)*q(y)"), 100, 42).pass);
        assert!(check_identity(&canon("b(x,y) - b(y,x)"), 100, 42).pass);
        assert!(check_identity(&canon("b(x,x) - 2*q(x)"), 100, 42).pass);
        assert!(check_identity(&canon("(x.y).x - q(x)*y"), 100, 42).pass);
        let r = check_identity(&canon("q(x) - q(y)"), 100, 42);
        assert!(!r.pass);
        assert!(r.counterexample.is_some());
        assert_eq!(r, check_identity(&canon("q(x) - q(y)"), 100, 42));
    }

    #[test]
    fn builtin_rules_are_sound() {
        for name in BUILTIN_NAMES {
            for rule in builtin_ruleset(name).unwrap().rules() {
                let r = check_rule(rule, 100, 42).unwrap();
                assert!(r.pass, "{r}");
            }
        }
    }
}
