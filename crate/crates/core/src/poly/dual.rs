use super::CommRing;

/// Dual number `re + eps * ε` with `ε^2 = 0`. Evaluating a polynomial map
/// at `x + ε v` yields the map and its directional derivative along `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: CommRing> Dual<T> {
    pub fn new(re: T, eps: T) -> Dual<T> {
        Dual { re, eps }
    }

    /// `x` with no infinitesimal part.
    pub fn real(re: T) -> Dual<T> {
        let eps = re.zero_like();
        Dual { re, eps }
    }
}

impl<T: CommRing> CommRing for Dual<T> {
    fn zero_like(&self) -> Self {
        Dual::real(self.re.zero_like())
    }
    fn one_like(&self) -> Self {
        Dual::real(self.re.one_like())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Dual::new(self.re.plus(&other.re), self.eps.plus(&other.eps))
    }
    fn minus(&self, other: &Self) -> Self {
        Dual::new(self.re.minus(&other.re), self.eps.minus(&other.eps))
    }
    fn times(&self, other: &Self) -> Self {
        let eps = self.re.times(&other.eps).plus(&self.eps.times(&other.re));
        Dual::new(self.re.times(&other.re), eps)
    }
    fn negated(&self) -> Self {
        Dual::new(self.re.negated(), self.eps.negated())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Prime;
    use crate::poly::UniPoly;

    #[test]
    fn epsilon_squares_to_zero() {
        let p = Prime::new(101).unwrap();
        let e = Dual::new(p.zero(), p.one());
        assert!(e.times(&e).is_zero());
    }

    #[test]
    fn derivative_of_cube() {
        let p = Prime::new(101).unwrap();
        let x = Dual::new(p.elem(3), p.one());
        let cube = x.times(&x).times(&x);
        assert_eq!(cube.re, p.elem(27));
        assert_eq!(cube.eps, p.elem(27));
    }

    #[test]
    fn polynomial_coefficients() {
        let p = Prime::new(101).unwrap();
        let f = Dual::new(UniPoly::new(p, &[1, 1]), UniPoly::new(p, &[0, 2]));
        let sq = f.times(&f);
        assert_eq!(sq.re, UniPoly::new(p, &[1, 2, 1]));
        assert_eq!(sq.eps, UniPoly::new(p, &[0, 4, 4]));
    }
}
