use crate::expr::{DotWord, ScalarAtom};

/// Pattern over dot-words. Variables bind whole subwords; literals match a
/// vector symbol by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordPat {
    Var(usize),
    Lit(String),
    Dot(Box<WordPat>, Box<WordPat>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomPat {
    Q(WordPat),
    B(WordPat, WordPat),
}

/// Left-hand side of a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// A dot-subtree, e.g. `(X.Y).X`.
    Word(WordPat),
    /// A single `q` or `b` atom.
    Atom(AtomPat),
    /// Two distinct atoms of one monomial, e.g. `b(X,Y)*b(Z,U)`.
    Product(AtomPat, AtomPat),
    /// An atom raised to exactly this power.
    Power(AtomPat, u32),
    /// A scalar multiple inside a `b` argument. Canonical forms never contain
    /// one, so these rules are kept for completeness and never fire.
    Inert,
}

/// Variable bindings, indexed by variable slot.
pub type Bindings = Vec<Option<DotWord>>;

impl WordPat {
    pub fn matches(&self, w: &DotWord, env: &mut Bindings) -> bool {
        match (self, w) {
            (WordPat::Var(i), _) => match &env[*i] {
                Some(bound) => bound == w,
                None => {
                    env[*i] = Some(w.clone());
                    true
                }
            },
            (WordPat::Lit(name), DotWord::Leaf(v)) => v.name() == name,
            (WordPat::Dot(pl, pr), DotWord::Pair(l, r)) => {
                let saved = env.clone();
                if pl.matches(l, env) && pr.matches(r, env) {
                    true
                } else {
                    *env = saved;
                    false
                }
            }
            _ => false,
        }
    }
}

impl AtomPat {
    pub fn matches(&self, a: &ScalarAtom, env: &mut Bindings) -> bool {
        let saved = env.clone();
        let ok = match (self, a) {
            (AtomPat::Q(p), ScalarAtom::Q(w)) => p.matches(w, env),
            (AtomPat::B(pl, pr), ScalarAtom::B(l, r)) => pl.matches(l, env) && pr.matches(r, env),
            _ => false,
        };
        if !ok {
            *env = saved;
        }
        ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Var;

    fn leaf(i: u32, n: &str) -> DotWord {
        DotWord::leaf(Var::new(i, n))
    }

    fn flex() -> WordPat {
        WordPat::Dot(
            Box::new(WordPat::Dot(Box::new(WordPat::Var(0)), Box::new(WordPat::Var(1)))),
            Box::new(WordPat::Var(0)),
        )
    }

    #[test]
    fn nonlinear_variables() {
        let (x, y, z) = (leaf(0, "x"), leaf(1, "y"), leaf(2, "z"));
        let mut env = vec![None, None];
        assert!(flex().matches(&DotWord::pair(DotWord::pair(x.clone(), y.clone()), x.clone()), &mut env));
        assert_eq!(env, vec![Some(x.clone()), Some(y.clone())]);

        let mut env = vec![None, None];
        assert!(!flex().matches(&DotWord::pair(DotWord::pair(x, y), z), &mut env));
        assert_eq!(env, vec![None, None]);
    }

    #[test]
    fn literals_match_by_name() {
        let p = AtomPat::B(WordPat::Lit("y".into()), WordPat::Lit("x".into()));
        let mut env = vec![];
        assert!(p.matches(&ScalarAtom::B(leaf(1, "y"), leaf(0, "x")), &mut env));
        assert!(!p.matches(&ScalarAtom::B(leaf(0, "x"), leaf(1, "y")), &mut env));
    }
}
