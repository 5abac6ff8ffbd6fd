//! Arithmetic in prime fields `F_p` with `2 < p < 2^31`.
//!
//! [`Fp`] carries its prime so that mixing elements of different fields is
//! caught. The operator impls panic on a mismatch; the `try_*` methods
//! return [`FieldError::PrimeMismatch`] instead. Hot kernels (polynomials,
//! Gröbner bases, elimination) work on raw `u32` residues through the
//! `mul_mod`/`inv_mod` helpers and a ring-level [`Prime`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Default primes for randomized trials, all below `2^31`.
pub const DEFAULT_PRIMES: [u32; 3] = [32003, 1000003, 2147483629];

/// A certified prime `2 < p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Prime, FieldError> {
        if p <= 2 || p >= 1 << 31 || !is_prime_u32(p as u32) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn reduce_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    #[inline]
    pub fn elem(self, x: i64) -> Fp {
        Fp { value: self.reduce_i64(x), p: self }
    }

    #[inline]
    pub fn zero(self) -> Fp {
        Fp { value: 0, p: self }
    }

    #[inline]
    pub fn one(self) -> Fp {
        Fp { value: 1, p: self }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.0 as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.0 as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        mul_mod(a, b, self.0)
    }

    /// Inverse of a nonzero residue.
    #[inline]
    pub fn inv(self, a: u32) -> Result<u32, FieldError> {
        inv_mod(a, self.0)
    }

    pub fn pow(self, a: u32, e: u64) -> u32 {
        pow_mod(a, e, self.0)
    }
}

impl TryFrom<u32> for Prime {
    type Error = FieldError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Prime::new(p as u64)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Extended Euclid on residues.
pub fn inv_mod(a: u32, p: u32) -> Result<u32, FieldError> {
    let a = a % p;
    if a == 0 {
        return Err(FieldError::DivisionByZero);
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Ok(s0.rem_euclid(p as i64) as u32)
}

/// Deterministic Miller-Rabin; bases {2, 7, 61} are exact below 2^32.
pub fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 61] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u32, 7, 61] {
        let mut x = pow_mod(a, d as u64, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A residue in `F_p`, always in canonical form `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: Prime,
}

impl Fp {
    pub fn new(value: i64, p: Prime) -> Fp {
        p.elem(value)
    }

    #[inline]
    pub(crate) fn from_raw(value: u32, p: Prime) -> Fp {
        debug_assert!(value < p.get());
        Fp { value, p }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.p
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Fp) -> Result<Prime, FieldError> {
        if self.p != other.p {
            return Err(FieldError::PrimeMismatch(self.p.get(), other.p.get()));
        }
        Ok(self.p)
    }

    pub fn try_add(self, other: Fp) -> Result<Fp, FieldError> {
        let p = self.check(other)?;
        Ok(Fp::from_raw(p.add(self.value, other.value), p))
    }

    pub fn try_sub(self, other: Fp) -> Result<Fp, FieldError> {
        let p = self.check(other)?;
        Ok(Fp::from_raw(p.sub(self.value, other.value), p))
    }

    pub fn try_mul(self, other: Fp) -> Result<Fp, FieldError> {
        let p = self.check(other)?;
        Ok(Fp::from_raw(p.mul(self.value, other.value), p))
    }

    pub fn inv(self) -> Result<Fp, FieldError> {
        Ok(Fp::from_raw(self.p.inv(self.value)?, self.p))
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp::from_raw(self.p.pow(self.value, e), self.p)
    }

    /// Square root when one exists in `F_p` (Tonelli-Shanks).
    pub fn sqrt(self) -> Option<Fp> {
        sqrt_mod(self.value, self.p.get()).map(|v| Fp::from_raw(v, self.p))
    }
}

fn sqrt_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p as u64 - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p as u64 + 1) / 4, p));
    }
    let mut q = p as u64 - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u32;
    while pow_mod(z, (p as u64 - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.try_add(rhs).expect("field elements over different primes")
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.try_sub(rhs).expect("field elements over different primes")
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.try_mul(rhs).expect("field elements over different primes")
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::from_raw(self.p.neg(self.value), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> Prime {
        Prime::new(7).unwrap()
    }

    #[test]
    fn default_primes_are_prime() {
        for p in DEFAULT_PRIMES {
            assert!(Prime::new(p as u64).is_ok(), "{p}");
        }
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(1 << 31).is_err());
        assert!(Prime::new(2147483647).is_ok());
        assert!(Prime::new(32001).is_err());
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        let trial = |n: u32| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..20_000u32 {
            assert_eq!(is_prime_u32(n), trial(n), "{n}");
        }
    }

    #[test]
    fn small_arithmetic() {
        let p = f7();
        assert_eq!((p.elem(3) + p.elem(5)).value(), 1);
        assert_eq!((p.elem(0) * p.elem(6)).value(), 0);
        assert_eq!((p.elem(-1) * p.elem(-1)).value(), 1);
        assert_eq!(p.elem(1).inv().unwrap().value(), 1);
        assert_eq!(p.elem(2).inv().unwrap().value(), 4);
    }

    #[test]
    fn inverse_of_five_mod_32003() {
        let p = Prime::new(32003).unwrap();
        let v = p.elem(5).inv().unwrap();
        assert_eq!(mul_mod(5, v.value(), 32003), 1);
        // 5 * 6401 = 32005 = 32003 + 2; 5 * 12801 = 64005 = 2*32003 - 1
        assert_eq!(v.value(), 19202);
    }

    #[test]
    fn wide_products_do_not_overflow() {
        let p = Prime::new(2147483629).unwrap();
        let m1 = p.elem(-1);
        assert_eq!((m1 * m1).value(), 1);
    }

    #[test]
    fn errors() {
        let a = f7().elem(3);
        let b = Prime::new(11).unwrap().elem(3);
        assert!(matches!(a.try_add(b), Err(FieldError::PrimeMismatch(7, 11))));
        assert!(matches!(f7().zero().inv(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn sqrt_roundtrip() {
        for &p in &[7u32, 13, 17, 32003, 1000003, 2147483629] {
            let prime = Prime::new(p as u64).unwrap();
            for x in 1..200i64 {
                let sq = prime.elem(x) * prime.elem(x);
                let r = sq.sqrt().unwrap();
                assert_eq!(r * r, sq);
            }
        }
        // 3 is a non-residue mod 7
        assert!(f7().elem(3).sqrt().is_none());
    }

    fn prime_strategy() -> impl Strategy<Value = Prime> {
        prop::sample::select(DEFAULT_PRIMES.to_vec()).prop_map(|p| Prime::new(p as u64).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(p in prime_strategy(), a: u32, b: u32, c: u32) {
            let (a, b, c) = (p.elem(a as i64), p.elem(b as i64), p.elem(c as i64));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, p.zero());
        }

        #[test]
        fn inverses_and_fermat(p in prime_strategy(), a in 1u32..) {
            let x = p.elem(a as i64);
            prop_assume!(!x.is_zero());
            prop_assert_eq!(x * x.inv().unwrap(), p.one());
            prop_assert_eq!(x.pow(p.get() as u64 - 1), p.one());
            prop_assert_eq!(x.pow(p.get() as u64), x);
        }
    }
}
