//! The cubic norm on `F ⊕ S` built from a symmetric composition `S`.

use crate::expr::{ScalarExpr, VectorExpr};

/// `h(x) = b(x, x.x)`.
pub fn h(x: &VectorExpr) -> ScalarExpr {
    x.b(&x.dot(x))
}

/// `con(x, y) = x.y - y.x`.
pub fn con(x: &VectorExpr, y: &VectorExpr) -> VectorExpr {
    &x.dot(y) - &y.dot(x)
}

/// An element `λ ⊕ x` with scalar part `λ` and vector part `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicElement {
    pub scalar: ScalarExpr,
    pub vector: VectorExpr,
}

impl CubicElement {
    pub fn new(scalar: ScalarExpr, vector: VectorExpr) -> Self {
        CubicElement { scalar, vector }
    }

    /// `(λ ⊕ x) • (μ ⊕ y) = (λμ + b(x,y)) ⊕ (λy + μx + α x.y + β y.x)`.
    pub fn bullet(&self, other: &CubicElement, alpha: &ScalarExpr, beta: &ScalarExpr) -> CubicElement {
        let (l, x) = (&self.scalar, &self.vector);
        let (m, y) = (&other.scalar, &other.vector);
        let scalar = &(l * m) + &x.b(y);
        let mut vector = y.scale(l);
        vector.add_assign_ref(&x.scale(m));
        vector.add_assign_ref(&x.dot(y).scale(alpha));
        vector.add_assign_ref(&y.dot(x).scale(beta));
        CubicElement { scalar, vector }
    }
}

/// `N(λ ⊕ x) = λ^3 - 3λ q(x) + h(x)`.
pub fn cubic_norm(e: &CubicElement) -> ScalarExpr {
    let l = &e.scalar;
    let three_l_q = (l * &e.vector.q()).scale(&crate::expr::rat(3));
    &(&l.pow(3) - &three_l_q) + &h(&e.vector)
}
