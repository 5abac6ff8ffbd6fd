use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::CommRing;
use crate::error::PolyError;
use crate::ff::{Fp, Prime};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 32;

/// Exponent vector over a declared variable set. Stored inline so that
/// monomials are `Copy`; only the first `len()` entries are meaningful.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    n: u8,
    deg: u16,
}

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        assert!(n <= MAX_VARS);
        Monomial { exps: [0; MAX_VARS], n: n as u8, deg: 0 }
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        Monomial::var_pow(n, i, 1)
    }

    pub fn var_pow(n: usize, i: usize, e: u8) -> Monomial {
        let mut m = Monomial::one(n);
        assert!(i < n);
        m.exps[i] = e;
        m.deg = e as u16;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Monomial, PolyError> {
        if exps.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables { max: MAX_VARS, got: exps.len() });
        }
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u8::try_from(e).map_err(|_| PolyError::ExponentOverflow)?;
            m.deg += e as u16;
        }
        Ok(m)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn exps(&self) -> &[u8] {
        &self.exps[..self.n as usize]
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.n, other.n);
        let mut exps = [0u8; MAX_VARS];
        let mut overflow = false;
        for i in 0..MAX_VARS {
            let s = self.exps[i] as u16 + other.exps[i] as u16;
            overflow |= s > u8::MAX as u16;
            exps[i] = s as u8;
        }
        (!overflow).then_some(Monomial { exps, n: self.n, deg: self.deg + other.deg })
    }

    /// Panics on exponent overflow (> 255 in one variable).
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial { exps, n: self.n, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u16;
        }
        Monomial { exps, n: self.n, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// `Some(i)` if this is `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps().iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    DegRevLex,
    Lex,
}

/// A monomial order together with a variable priority list:
/// `priority[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    identity: bool,
}

impl MonomialOrder {
    pub fn degrevlex(n: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::DegRevLex, priority: (0..n).collect(), identity: true }
    }

    pub fn lex(n: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Lex, priority: (0..n).collect(), identity: true }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<MonomialOrder, PolyError> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return Err(PolyError::Parse(format!("bad variable priority {priority:?}")));
            }
            seen[v] = true;
        }
        let identity = priority.iter().enumerate().all(|(i, &v)| i == v);
        Ok(MonomialOrder { kind, priority, identity })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Packs a monomial into words whose lexicographic order is this
    /// monomial order. Distinct monomials get distinct keys.
    #[inline]
    pub fn key(&self, m: &Monomial) -> OrderKey {
        let mut bytes = [0u8; 40];
        let n = m.n as usize;
        match self.kind {
            OrderKind::DegRevLex => {
                bytes[..2].copy_from_slice(&m.deg.to_be_bytes());
                for (slot, &v) in self.priority.iter().rev().enumerate() {
                    bytes[2 + slot] = 255 - m.exps[v];
                }
            }
            OrderKind::Lex => {
                for (slot, &v) in self.priority.iter().enumerate() {
                    bytes[slot] = m.exps[v];
                }
            }
        }
        debug_assert!(n <= MAX_VARS);
        let mut key = [0u64; 5];
        for (w, chunk) in key.iter_mut().zip(bytes.chunks_exact(8)) {
            *w = u64::from_be_bytes(chunk.try_into().expect("8 bytes"));
        }
        key
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::DegRevLex => {
                let by_deg = a.deg.cmp(&b.deg);
                if by_deg != Ordering::Equal {
                    return by_deg;
                }
                if self.identity {
                    for i in (0..a.n as usize).rev() {
                        if a.exps[i] != b.exps[i] {
                            return b.exps[i].cmp(&a.exps[i]);
                        }
                    }
                } else {
                    for &i in self.priority.iter().rev() {
                        if a.exps[i] != b.exps[i] {
                            return b.exps[i].cmp(&a.exps[i]);
                        }
                    }
                }
                Ordering::Equal
            }
            OrderKind::Lex => {
                for &i in &self.priority {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Word-packed sort key, see [`MonomialOrder::key`].
pub type OrderKey = [u64; 5];

/// Ring metadata shared by all polynomials of one ring.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    prime: Prime,
    order: MonomialOrder,
}

impl PolyRing {
    /// Degrevlex ring over the given variable names (first name most
    /// significant).
    pub fn new<S: AsRef<str>>(names: &[S], prime: Prime) -> Result<Arc<PolyRing>, PolyError> {
        PolyRing::with_order(names, prime, MonomialOrder::degrevlex(names.len()))
    }

    pub fn with_order<S: AsRef<str>>(
        names: &[S],
        prime: Prime,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables { max: MAX_VARS, got: names.len() });
        }
        if order.priority.len() != names.len() {
            return Err(PolyError::Arity { expected: names.len(), got: order.priority.len() });
        }
        Ok(Arc::new(PolyRing {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            prime,
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Sparse polynomial: nonzero terms in strictly descending monomial order.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> MultiPoly {
        MultiPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> MultiPoly {
        MultiPoly::constant(ring, ring.prime.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Fp) -> MultiPoly {
        MultiPoly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> MultiPoly {
        MultiPoly::term(ring, Monomial::var(ring.nvars(), i), ring.prime.one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Fp) -> MultiPoly {
        assert_eq!(c.prime(), ring.prime);
        assert_eq!(m.len(), ring.nvars());
        let terms = if c.is_zero() { vec![] } else { vec![(m, c.value())] };
        MultiPoly { ring: ring.clone(), terms }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> MultiPoly {
        let p = ring.prime;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = p.add(*e, c % p.get());
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| ring.order.cmp(&b.0, &a.0));
        MultiPoly { ring: ring.clone(), terms }
    }

    /// Trusted constructor: terms already sorted descending and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> MultiPoly {
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn prime(&self) -> Prime {
        self.ring.prime
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<Fp> {
        self.terms.first().map(|t| Fp::from_raw(t.1, self.ring.prime))
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        let p = self.ring.prime;
        let c = self
            .terms
            .binary_search_by(|t| self.ring.order.cmp(m, &t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0);
        Fp::from_raw(c, p)
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Panics on ring mismatch; see [`MultiPoly::try_add`].
    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.try_add(other).expect("ring mismatch")
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.try_sub(other).expect("ring mismatch")
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.try_mul(other).expect("ring mismatch")
    }

    pub fn neg(&self) -> MultiPoly {
        let p = self.ring.prime;
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, p.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: Fp) -> MultiPoly {
        assert_eq!(c.prime(), self.ring.prime);
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        let p = self.ring.prime;
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, p.mul(a, c.value()))).collect(),
        }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> MultiPoly {
        let p = self.ring.prime;
        if c == 0 {
            return MultiPoly::zero(&self.ring);
        }
        // Multiplying by a monomial preserves the order.
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(n, a)| (n.mul(m), p.mul(a, c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            Some(lc) if lc.value() != 1 => self.scale(lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let p = self.ring.prime;
        let ord = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: u32| if negate { p.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, sign(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = p.add(a[i].1, sign(b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, sign(c))));
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = small.terms[0];
            return big.mul_term(&m, c);
        }
        let p = self.ring.prime.get() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for &(ma, ca) in &small.terms {
            for &(mb, cb) in &big.terms {
                let e = acc.entry(ma.mul(&mb)).or_insert(0);
                *e = (*e + ca as u64 * cb as u64) % p;
            }
        }
        let ord = &self.ring.order;
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).map(|(m, c)| (m, c as u32)).collect();
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn eval(&self, values: &[Fp]) -> Result<Fp, PolyError> {
        let n = self.ring.nvars();
        if values.len() != n {
            return Err(PolyError::Arity { expected: n, got: values.len() });
        }
        let p = self.ring.prime;
        if let Some(v) = values.iter().find(|v| v.prime() != p) {
            return Err(PolyError::Field(crate::error::FieldError::PrimeMismatch(p.get(), v.prime().get())));
        }
        // Power tables keep this linear in the number of terms.
        let maxe: Vec<u32> = (0..n)
            .map(|i| self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut row = vec![1u32; maxe[i] as usize + 1];
                for k in 1..row.len() {
                    row[k] = p.mul(row[k - 1], values[i].value());
                }
                row
            })
            .collect();
        let mut acc = 0u32;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = p.mul(t, powers[i][e as usize]);
                }
            }
            acc = p.add(acc, t);
        }
        Ok(Fp::from_raw(acc, p))
    }

    /// Replaces variable `var` by `value` (another polynomial of this ring).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(value)?;
        if var >= self.ring.nvars() {
            return Err(PolyError::Arity { expected: self.ring.nvars(), got: var + 1 });
        }
        // Group terms by the exponent of `var`, then Horner in `value`.
        let mut groups: Vec<Vec<(Monomial, u32)>> = Vec::new();
        for &(m, c) in &self.terms {
            let e = m.exp(var) as usize;
            if groups.len() <= e {
                groups.resize(e + 1, Vec::new());
            }
            let mut rest = m;
            rest.exps[var] = 0;
            rest.deg -= e as u16;
            groups[e].push((rest, c));
        }
        let mut acc = MultiPoly::zero(&self.ring);
        for group in groups.into_iter().rev() {
            acc = acc.mul(value).add(&MultiPoly::from_terms(&self.ring, group));
        }
        Ok(acc)
    }

    /// Assigns constants to a subset of variables.
    pub fn assign(&self, assignments: &[(usize, Fp)]) -> Result<MultiPoly, PolyError> {
        let mut out = self.clone();
        for &(v, c) in assignments {
            out = out.substitute(v, &MultiPoly::constant(&self.ring, c))?;
        }
        Ok(out)
    }

    /// `var -> var + c`.
    pub fn shift(&self, var: usize, c: Fp) -> Result<MultiPoly, PolyError> {
        let lin = MultiPoly::var(&self.ring, var).add(&MultiPoly::constant(&self.ring, c));
        self.substitute(var, &lin)
    }

    pub fn partial(&self, var: usize) -> MultiPoly {
        let p = self.ring.prime;
        let terms = self.terms.iter().filter_map(|&(m, c)| {
            let e = m.exp(var);
            if e == 0 {
                return None;
            }
            let c = p.mul(c, p.reduce_u64(e as u64));
            let mut d = m;
            d.exps[var] -= 1;
            d.deg -= 1;
            (c != 0).then_some((d, c))
        });
        MultiPoly::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]`.
    pub fn map_into(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Result<MultiPoly, PolyError> {
        if var_map.len() != self.ring.nvars() {
            return Err(PolyError::Arity { expected: self.ring.nvars(), got: var_map.len() });
        }
        if target.prime != self.ring.prime {
            return Err(PolyError::RingMismatch);
        }
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.len());
        for &(m, c) in &self.terms {
            let mut t = Monomial::one(n);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let j = var_map[i];
                    if j >= n {
                        return Err(PolyError::Arity { expected: n, got: j + 1 });
                    }
                    t.exps[j] += e;
                    t.deg += e as u16;
                }
            }
            terms.push((t, c));
        }
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Views the polynomial as a polynomial in `outer` with coefficients in
    /// `inner` (the remaining variables, in their original order). Returns
    /// the exponent vectors over `outer` with their coefficient polynomials.
    pub fn coefficients_wrt(
        &self,
        outer: &[usize],
        inner: &Arc<PolyRing>,
    ) -> Result<Vec<(Vec<u32>, MultiPoly)>, PolyError> {
        let n = self.ring.nvars();
        let rest: Vec<usize> = (0..n).filter(|i| !outer.contains(i)).collect();
        if rest.len() != inner.nvars() {
            return Err(PolyError::Arity { expected: rest.len(), got: inner.nvars() });
        }
        let mut groups: HashMap<Vec<u32>, Vec<(Monomial, u32)>> = HashMap::new();
        for &(m, c) in &self.terms {
            let key: Vec<u32> = outer.iter().map(|&v| m.exp(v)).collect();
            let mut t = Monomial::one(rest.len());
            for (k, &v) in rest.iter().enumerate() {
                t.exps[k] = m.exps[v];
                t.deg += m.exps[v] as u16;
            }
            groups.entry(key).or_default().push((t, c));
        }
        let mut out: Vec<_> = groups
            .into_iter()
            .map(|(k, ts)| (k, MultiPoly::from_terms(inner, ts)))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Parses the canonical text form (`2*x^2*y + 3*y - 1`).
    pub fn parse(ring: &Arc<PolyRing>, s: &str) -> Result<MultiPoly, PolyError> {
        let p = ring.prime;
        let n = ring.nvars();
        let err = |msg: &str| PolyError::Parse(format!("{msg} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = 1u32;
            let mut mono = Monomial::one(n);
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    let v: u64 = factor.parse().map_err(|_| err("bad integer"))?;
                    coeff = p.mul(coeff, p.reduce_u64(v));
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((name, e)) => (name, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let v = ring.var_index(name).ok_or_else(|| err(&format!("unknown variable {name}")))?;
                let e = mono.exps[v] as u32 + exp;
                mono.exps[v] = u8::try_from(e).map_err(|_| PolyError::ExponentOverflow)?;
                mono.deg += exp as u16;
            }
            if negative {
                coeff = p.neg(coeff);
            }
            terms.push((mono, coeff));
        }
        Ok(MultiPoly::from_terms(ring, terms))
    }
}

impl CommRing for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(&self.ring)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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

/// Canonical text form: descending terms, explicit `*` and `^`,
/// coefficients as canonical residues.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    e => factors.push(format!("{}^{}", self.ring.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(names: &[&str], p: u64) -> Arc<PolyRing> {
        PolyRing::new(names, Prime::new(p).unwrap()).unwrap()
    }

    #[test]
    fn square_of_sum() {
        let r = ring(&["x", "y"], 32003);
        let s = MultiPoly::parse(&r, "x + y").unwrap();
        let expect = MultiPoly::parse(&r, "x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(s.mul(&s), expect);
        assert_eq!(s.pow(2).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn evaluation() {
        let r = ring(&["x"], 5);
        let f = MultiPoly::parse(&r, "x^2 + 1").unwrap();
        assert_eq!(f.eval(&[r.prime().elem(2)]).unwrap().value(), 0);
        assert!(matches!(f.eval(&[]), Err(PolyError::Arity { expected: 1, got: 0 })));
    }

    #[test]
    fn shift_binomial() {
        let r = ring(&["t"], 32003);
        let f = MultiPoly::parse(&r, "t^2").unwrap();
        let g = f.shift(0, r.prime().one()).unwrap();
        assert_eq!(g, MultiPoly::parse(&r, "t^2 + 2*t + 1").unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = ring(&["x"], 7);
        let r2 = ring(&["x", "y"], 7);
        let a = MultiPoly::var(&r1, 0);
        let b = MultiPoly::var(&r2, 0);
        assert_eq!(a.try_add(&b), Err(PolyError::RingMismatch));
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::degrevlex(3);
        let m = |e: &[u32]| Monomial::from_exps(e).unwrap();
        // x*z < y^2 in degrevlex (z is the smallest variable)
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
        let lex = MonomialOrder::lex(3);
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 3])), Ordering::Greater);
        let rev = MonomialOrder::with_priority(OrderKind::Lex, vec![2, 1, 0]).unwrap();
        assert_eq!(rev.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 3])), Ordering::Less);
    }

    #[test]
    fn display_parse_roundtrip() {
        let r = ring(&["a", "b", "c"], 32003);
        let f = MultiPoly::parse(&r, "3*a^2*b - c + 7 - 2*a*b*c^3").unwrap();
        assert_eq!(MultiPoly::parse(&r, &f.to_string()).unwrap(), f);
        assert_eq!(f.to_string(), "32001*a*b*c^3 + 3*a^2*b + 32002*c + 7");
    }

    #[test]
    fn coefficient_extraction() {
        let r = ring(&["a", "t"], 32003);
        let inner = ring(&["a"], 32003);
        let f = MultiPoly::parse(&r, "a*t^2 + 3*t^2 + a^2 + 1").unwrap();
        let cs = f.coefficients_wrt(&[1], &inner).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].0, vec![0]);
        assert_eq!(cs[0].1, MultiPoly::parse(&inner, "a^2 + 1").unwrap());
        assert_eq!(cs[1].0, vec![2]);
        assert_eq!(cs[1].1, MultiPoly::parse(&inner, "a + 3").unwrap());
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..6, n).prop_map(|e| Monomial::from_exps(&e).unwrap())
    }

    proptest! {
        #[test]
        fn degrevlex_is_a_monomial_order(a in arb_mono(4), b in arb_mono(4), c in arb_mono(4)) {
            for o in [MonomialOrder::degrevlex(4), MonomialOrder::lex(4),
                      MonomialOrder::with_priority(OrderKind::DegRevLex, vec![3, 1, 0, 2]).unwrap()] {
                // total & antisymmetric
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                // multiplicative
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                // 1 is minimal
                prop_assert!(o.cmp(&Monomial::one(4), &a) != Ordering::Greater);
                // transitive
                if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
                }
            }
        }

        #[test]
        fn packed_keys_follow_the_order(a in arb_mono(4), b in arb_mono(4)) {
            for o in [MonomialOrder::degrevlex(4), MonomialOrder::lex(4),
                      MonomialOrder::with_priority(OrderKind::DegRevLex, vec![3, 1, 0, 2]).unwrap()] {
                prop_assert_eq!(o.key(&a).cmp(&o.key(&b)), o.cmp(&a, &b));
            }
        }

        #[test]
        fn product_rule_for_partials(ca in prop::collection::vec((0u32..4, 0u32..4, 0u32..32003), 0..6),
                                      cb in prop::collection::vec((0u32..4, 0u32..4, 0u32..32003), 0..6)) {
            let r = ring(&["x", "y"], 32003);
            let mk = |v: &[(u32, u32, u32)]| MultiPoly::from_terms(&r, v.iter().map(|&(i, j, c)| (Monomial::from_exps(&[i, j]).unwrap(), c)));
            let (f, g) = (mk(&ca), mk(&cb));
            prop_assert_eq!(f.mul(&g).partial(0), f.partial(0).mul(&g).add(&f.mul(&g.partial(0))));
        }
    }
}
