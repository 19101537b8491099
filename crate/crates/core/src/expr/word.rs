use std::cmp::Ordering;
use std::fmt;

use super::symbol::Var;

/// A fully parenthesized product of vector symbols.
///
/// The product is not associative, so `(u.v).w` and `u.(v.w)` are different
/// words and nothing here ever rebalances a tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DotWord {
    Leaf(Var),
    Pair(Box<DotWord>, Box<DotWord>),
}

impl DotWord {
    pub fn leaf(v: Var) -> Self {
        DotWord::Leaf(v)
    }

    pub fn pair(left: DotWord, right: DotWord) -> Self {
        DotWord::Pair(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            DotWord::Leaf(_) => 1,
            DotWord::Pair(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Nesting depth; a bare symbol has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            DotWord::Leaf(_) => 0,
            DotWord::Pair(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn as_leaf(&self) -> Option<&Var> {
        match self {
            DotWord::Leaf(v) => Some(v),
            DotWord::Pair(..) => None,
        }
    }

    pub fn for_each_leaf<'a>(&'a self, f: &mut impl FnMut(&'a Var)) {
        match self {
            DotWord::Leaf(v) => f(v),
            DotWord::Pair(l, r) => {
                l.for_each_leaf(f);
                r.for_each_leaf(f);
            }
        }
    }

    fn fmt_nested(&self, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
        match self {
            DotWord::Leaf(v) => f.write_str(v.name()),
            DotWord::Pair(l, r) => {
                if nested {
                    f.write_str("(")?;
                }
                l.fmt_nested(f, true)?;
                f.write_str(".")?;
                r.fmt_nested(f, true)?;
                if nested {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// Leaf count first, then structure: leaves by declaration index, a leaf
/// before a pair, pairs by left then right factor.
impl Ord for DotWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaf_count()
            .cmp(&other.leaf_count())
            .then_with(|| match (self, other) {
                (DotWord::Leaf(a), DotWord::Leaf(b)) => a.cmp(b),
                (DotWord::Leaf(_), DotWord::Pair(..)) => Ordering::Less,
                (DotWord::Pair(..), DotWord::Leaf(_)) => Ordering::Greater,
                (DotWord::Pair(l1, r1), DotWord::Pair(l2, r2)) => l1.cmp(l2).then_with(|| r1.cmp(r2)),
            })
    }
}

impl PartialOrd for DotWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints with the outermost product bare and every inner product in
/// parentheses, e.g. `x.(y.x)`.
impl fmt::Display for DotWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_nested(f, false)
    }
}

impl fmt::Debug for DotWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
