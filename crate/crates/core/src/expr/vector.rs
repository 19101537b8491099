use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::scalar::ScalarExpr;
use super::symbol::Var;
use super::word::DotWord;

/// Canonical vector: a finite sum of dot-words with scalar polynomial
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VectorExpr {
    terms: BTreeMap<DotWord, ScalarExpr>,
}

impl VectorExpr {
    pub fn zero() -> Self {
        VectorExpr::default()
    }

    pub fn word(w: DotWord) -> Self {
        VectorExpr::term(w, ScalarExpr::one())
    }

    pub fn symbol(v: Var) -> Self {
        VectorExpr::word(DotWord::leaf(v))
    }

    pub fn term(w: DotWord, c: ScalarExpr) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        VectorExpr { terms }
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DotWord, &ScalarExpr)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &DotWord) -> Option<&ScalarExpr> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: DotWord, c: &ScalarExpr) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &VectorExpr) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn scale(&self, c: &ScalarExpr) -> VectorExpr {
        let mut out = VectorExpr::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), &(k * c));
        }
        out
    }

    /// Bilinear product: distributes over both sums and pulls scalars out.
    pub fn dot(&self, other: &VectorExpr) -> VectorExpr {
        let mut out = VectorExpr::zero();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                out.add_term(DotWord::pair(u.clone(), v.clone()), &(cu * cv));
            }
        }
        out
    }

    /// `q` of a sum, polarized term by term:
    /// `q(sum c_i w_i) = sum c_i^2 q(w_i) + sum_{i<j} c_i c_j b(w_i, w_j)`,
    /// with `i < j` in canonical word order.
    pub fn q(&self) -> ScalarExpr {
        let terms: Vec<_> = self.terms.iter().collect();
        let mut out = ScalarExpr::zero();
        for (i, (wi, ci)) in terms.iter().enumerate() {
            let sq = *ci * *ci;
            out.add_assign_ref(&(&sq * &ScalarExpr::q_atom((*wi).clone())));
            for (wj, cj) in &terms[i + 1..] {
                let c = *ci * *cj;
                out.add_assign_ref(&(&c * &ScalarExpr::b_atom((*wi).clone(), (*wj).clone())));
            }
        }
        out
    }

    /// Bilinear `b`, keeping argument order in every generated atom.
    pub fn b(&self, other: &VectorExpr) -> ScalarExpr {
        let mut out = ScalarExpr::zero();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let c = cu * cv;
                out.add_assign_ref(&(&c * &ScalarExpr::b_atom(u.clone(), v.clone())));
            }
        }
        out
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> VectorExpr {
        let mut out = VectorExpr::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }
}

impl Add for &VectorExpr {
    type Output = VectorExpr;
    fn add(self, rhs: &VectorExpr) -> VectorExpr {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &VectorExpr {
    type Output = VectorExpr;
    fn sub(self, rhs: &VectorExpr) -> VectorExpr {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Neg for &VectorExpr {
    type Output = VectorExpr;
    fn neg(self) -> VectorExpr {
        VectorExpr {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(i: u32, n: &str) -> VectorExpr {
        VectorExpr::symbol(Var::new(i, n))
    }

    #[test]
    fn dot_distributes() {
        let (x, y, z) = (sym(0, "x"), sym(1, "y"), sym(2, "z"));
        let lhs = x.dot(&(&y + &z));
        let rhs = &x.dot(&y) + &x.dot(&z);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn q_polarizes_earlier_then_later() {
        let (x, y) = (sym(0, "x"), sym(1, "y"));
        let expected = &(&x.q() + &y.q()) + &x.b(&y);
        assert_eq!((&y + &x).q(), expected);
    }

    #[test]
    fn q_is_quadratic_in_scalars() {
        let x = sym(0, "x");
        let two = ScalarExpr::from_int(2);
        assert_eq!(x.scale(&two).q(), x.q().scale(&crate::expr::rat(4)));
    }
}
