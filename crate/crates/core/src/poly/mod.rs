//! Polynomial arithmetic over `F_p`.
//!
//! [`UniPoly`] is dense in `t` (scroll sections), [`MultiPoly`] is a sparse
//! term list under a [`MonomialOrder`] (chart ideals). Both implement
//! [`CommRing`], so [`det`] and [`Dual`] work over either.

mod det;
mod dual;
mod multi;
mod uni;

pub use det::{det, det_berkowitz, det_cofactor, det_poly_matrix, COFACTOR_CUTOFF};
pub use dual::Dual;
pub use multi::{Monomial, MonomialOrder, MultiPoly, OrderKey, OrderKind, PolyRing, MAX_VARS};
pub use uni::UniPoly;

use crate::ff::Fp;

/// The commutative-ring operations the generic determinant and dual-number
/// code rely on. Zero and one are produced from an existing element because
/// the ambient prime (and ring) lives in the value.
pub trait CommRing: Clone + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn negated(&self) -> Self {
        self.zero_like().minus(self)
    }
}

impl CommRing for Fp {
    fn zero_like(&self) -> Self {
        self.prime().zero()
    }
    fn one_like(&self) -> Self {
        self.prime().one()
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn minus(&self, other: &Self) -> Self {
        *self - *other
    }
    fn times(&self, other: &Self) -> Self {
        *self * *other
    }
    fn negated(&self) -> Self {
        -*self
    }
}
