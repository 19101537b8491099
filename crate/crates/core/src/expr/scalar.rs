use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::symbol::Var;
use super::word::DotWord;
use super::Rational;

/// An indivisible scalar factor. Variant order is the kind order used by the
/// canonical form: symbols, then `q` atoms, then `b` atoms.
///
/// `B(u, v)` and `B(v, u)` are distinct; symmetry of `b` is only ever applied
/// by an explicit rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarAtom {
    Sym(Var),
    Q(DotWord),
    B(DotWord, DotWord),
}

impl ScalarAtom {
    pub fn is_b(&self) -> bool {
        matches!(self, ScalarAtom::B(..))
    }
}

/// A product of atoms with positive exponents, kept sorted by atom order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(ScalarAtom, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn atom(atom: ScalarAtom) -> Self {
        Monomial {
            factors: vec![(atom, 1)],
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and
    /// dropping zero exponents.
    pub fn from_factors(factors: impl IntoIterator<Item = (ScalarAtom, u32)>) -> Self {
        let mut map: BTreeMap<ScalarAtom, u32> = BTreeMap::new();
        for (a, e) in factors {
            if e > 0 {
                *map.entry(a).or_insert(0) += e;
            }
        }
        Monomial {
            factors: map.into_iter().collect(),
        }
    }

    pub fn factors(&self) -> &[(ScalarAtom, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, atom: &ScalarAtom) -> u32 {
        self.factors
            .binary_search_by(|(a, _)| a.cmp(atom))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Copy of `self` with the factor at each listed position removed.
    pub fn without_positions(&self, positions: &[usize]) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .enumerate()
                .filter(|(i, _)| !positions.contains(i))
                .map(|(_, f)| f.clone())
                .collect(),
        }
    }

    /// Copy of `self` with `atom` removed entirely.
    pub fn without_atom(&self, atom: &ScalarAtom) -> Monomial {
        Monomial {
            factors: self.factors.iter().filter(|(a, _)| a != atom).cloned().collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }
}

/// Graded: total degree first, then lexicographic over the sorted factors.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical polynomial over scalar atoms with exact rational coefficients.
/// No zero coefficient is ever stored, so the empty map is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr::default()
    }

    pub fn one() -> Self {
        ScalarExpr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ScalarExpr::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        ScalarExpr::constant(Rational::from_integer(n.into()))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ScalarExpr { terms }
    }

    pub fn atom(a: ScalarAtom) -> Self {
        ScalarExpr::term(Monomial::atom(a), Rational::one())
    }

    pub fn symbol(v: Var) -> Self {
        ScalarExpr::atom(ScalarAtom::Sym(v))
    }

    pub fn q_atom(w: DotWord) -> Self {
        ScalarExpr::atom(ScalarAtom::Q(w))
    }

    pub fn b_atom(u: DotWord, v: DotWord) -> Self {
        ScalarExpr::atom(ScalarAtom::B(u, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, if it has no atoms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &ScalarExpr) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> ScalarExpr {
        if c.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies every term by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (mm, k) in &self.terms {
            out.add_term(mm.mul(m), k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> ScalarExpr {
        let mut acc = ScalarExpr::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps only the terms accepted by `keep`, mapping their monomials.
    pub fn filter_map_terms(&self, mut f: impl FnMut(&Monomial) -> Option<Monomial>) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (m, c) in &self.terms {
            if let Some(m2) = f(m) {
                out.add_term(m2, c.clone());
            }
        }
        out
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}
