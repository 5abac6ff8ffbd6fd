use std::fmt;

use super::CommRing;
use crate::ff::{Fp, Prime};

/// Dense univariate polynomial in `t`; `coeffs[k]` is the coefficient of
/// `t^k`. Trailing zeros are trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    p: Prime,
    coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn new(p: Prime, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_raw(p, coeffs.iter().map(|&c| p.reduce_i64(c)).collect())
    }

    /// Takes canonical residues; trims trailing zeros.
    pub fn from_raw(p: Prime, mut coeffs: Vec<u32>) -> UniPoly {
        debug_assert!(coeffs.iter().all(|&c| c < p.get()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { p, coeffs }
    }

    pub fn from_fp(coeffs: &[Fp], p: Prime) -> UniPoly {
        UniPoly::from_raw(p, coeffs.iter().map(|c| c.value()).collect())
    }

    pub fn zero(p: Prime) -> UniPoly {
        UniPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: Prime) -> UniPoly {
        UniPoly::constant(p.one())
    }

    pub fn constant(c: Fp) -> UniPoly {
        UniPoly::from_raw(c.prime(), vec![c.value()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Fp, k: usize) -> UniPoly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c.value();
        UniPoly::from_raw(c.prime(), coeffs)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Fp {
        Fp::from_raw(self.coeffs.get(k).copied().unwrap_or(0), self.p)
    }

    pub fn raw_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficients `0..len` in ascending order, zero-padded.
    ///
    /// Panics if the polynomial has degree `>= len`.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        assert!(self.coeffs.len() <= len, "degree {:?} does not fit {len} slots", self.degree());
        let mut out = self.coeffs.clone();
        out.resize(len, 0);
        out
    }

    pub fn derivative(&self) -> UniPoly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| p.mul(p.reduce_u64(k as u64), c))
            .collect();
        UniPoly::from_raw(p, coeffs)
    }

    pub fn eval(&self, x: Fp) -> Fp {
        assert_eq!(x.prime(), self.p);
        let p = self.p;
        let v = self.coeffs.iter().rev().fold(0, |acc, &c| p.add(p.mul(acc, x.value()), c));
        Fp::from_raw(v, p)
    }

    /// `f(t + c)`.
    pub fn shift(&self, c: Fp) -> UniPoly {
        assert_eq!(c.prime(), self.p);
        // Horner with the linear polynomial t + c.
        let lin = UniPoly::from_raw(self.p, vec![c.value(), 1]);
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(self.p), |acc, &k| {
                acc.mul(&lin).add(&UniPoly::constant(Fp::from_raw(k, self.p)))
            })
    }

    pub fn scale(&self, c: Fp) -> UniPoly {
        assert_eq!(c.prime(), self.p);
        let p = self.p;
        UniPoly::from_raw(p, self.coeffs.iter().map(|&a| p.mul(a, c.value())).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        assert_eq!(self.p, other.p, "polynomials over different primes");
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                p.add(
                    self.coeffs.get(k).copied().unwrap_or(0),
                    other.coeffs.get(k).copied().unwrap_or(0),
                )
            })
            .collect();
        UniPoly::from_raw(p, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        let p = self.p;
        UniPoly { p, coeffs: self.coeffs.iter().map(|&c| p.neg(c)).collect() }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        assert_eq!(self.p, other.p, "polynomials over different primes");
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.p);
        }
        let p = self.p.get() as u64;
        // Accumulate unreduced products; reduce every few steps to stay in u64.
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        UniPoly::from_raw(self.p, acc.into_iter().map(|c| c as u32).collect())
    }
}

impl CommRing for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.p)
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.p)
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]({})", self.p, self)
    }
}
