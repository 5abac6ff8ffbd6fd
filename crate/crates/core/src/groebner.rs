//! Buchberger's algorithm over `F_p` and standard-monomial counting.
//!
//! Reduction is heap based: a reduction `f - sum q_k g_k` is a merge of
//! lazily expanded product streams, so no intermediate polynomial is ever
//! materialized. Pairs are pruned with the Gebauer–Möller installation of
//! Buchberger's coprime and chain criteria and selected by the normal
//! strategy (smallest lcm, ties broken by sugar).

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{BudgetDiagnostics, GroebnerError, PolyError};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, OrderKey, PolyRing};

/// Step and wall-clock limits for one basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_steps: 10_000_000, max_time: Duration::from_secs(300) }
    }
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { max_steps: u64::MAX, max_time: Duration::MAX }
    }
}

/// Generators in a common ring; zero generators are dropped.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<MultiPoly>) -> Result<Ideal, PolyError> {
        for g in &gens {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }
}

/// Reduced, monic Gröbner basis sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| *g.leading_monomial().expect("nonzero")).collect()
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
        normal_form(f, &self.elements)
    }

    pub fn is_zero_dimensional(&self) -> bool {
        is_zero_dimensional(self)
    }

    pub fn quotient_dimension(&self) -> Result<u64, GroebnerError> {
        quotient_dimension(self)
    }
}

#[inline]
fn support_mask(m: &Monomial) -> u32 {
    m.exps().iter().enumerate().fold(0, |acc, (i, &e)| if e > 0 { acc | 1 << i } else { acc })
}

struct Stream<'a> {
    coeff: u32,
    shift: Monomial,
    terms: &'a [(Monomial, u32)],
    pos: usize,
}

/// Heap entry: the current term of a stream, keyed by its packed order key.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    key: OrderKey,
    stream: Reverse<u32>,
}

struct Divisors<'a> {
    polys: Vec<&'a MultiPoly>,
    lms: Vec<Monomial>,
    masks: Vec<u32>,
}

impl<'a> Divisors<'a> {
    fn new(polys: impl IntoIterator<Item = &'a MultiPoly>) -> Divisors<'a> {
        let polys: Vec<&MultiPoly> = polys.into_iter().collect();
        let lms: Vec<Monomial> = polys.iter().map(|g| *g.leading_monomial().expect("nonzero divisor")).collect();
        let masks = lms.iter().map(support_mask).collect();
        Divisors { polys, lms, masks }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = support_mask(m);
        (0..self.lms.len()).find(|&k| self.masks[k] & !mask == 0 && self.lms[k].divides(m))
    }
}

/// Counts reduction steps against a budget; time is sampled every 1024 steps.
struct Meter {
    steps: u64,
    start: Instant,
    budget: Budget,
    over: bool,
}

impl Meter {
    fn new(budget: Budget) -> Meter {
        Meter { steps: 0, start: Instant::now(), budget, over: false }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.steps += 1;
        if self.steps > self.budget.max_steps
            || (self.steps % 1024 == 0 && self.start.elapsed() > self.budget.max_time)
        {
            self.over = true;
        }
        !self.over
    }
}

#[inline]
fn push(heap: &mut BinaryHeap<Entry>, streams: &[Stream<'_>], k: usize, order: &MonomialOrder) {
    let s = &streams[k];
    if s.pos < s.terms.len() {
        let key = order.key(&s.shift.mul(&s.terms[s.pos].0));
        heap.push(Entry { key, stream: Reverse(k as u32) });
    }
}

#[inline]
fn advance(k: usize, heap: &mut BinaryHeap<Entry>, streams: &mut [Stream<'_>], order: &MonomialOrder, acc: &mut u64, pp: u64) {
    let s = &mut streams[k];
    *acc = (*acc + s.coeff as u64 * s.terms[s.pos].1 as u64) % pp;
    s.pos += 1;
    push(heap, streams, k, order);
}

/// Fully reduces `sum coeff * shift * terms[pos..]` by monic divisors.
/// Returns `None` if the meter runs out.
fn reduce_streams<'a>(
    ring: &Arc<PolyRing>,
    mut streams: Vec<Stream<'a>>,
    divisors: &Divisors<'a>,
    meter: &mut Meter,
) -> Option<MultiPoly> {
    let p = ring.prime();
    let pp = p.get() as u64;
    let order = ring.order();
    let mut heap: BinaryHeap<Entry> = BinaryHeap::with_capacity(streams.len() * 2);
    for k in 0..streams.len() {
        push(&mut heap, &streams, k, order);
    }
    let mut out: Vec<(Monomial, u32)> = Vec::new();
    while let Some(top) = heap.pop() {
        let k0 = top.stream.0 as usize;
        let m = {
            let s = &streams[k0];
            s.shift.mul(&s.terms[s.pos].0)
        };
        let mut acc: u64 = 0;
        advance(k0, &mut heap, &mut streams, order, &mut acc, pp);
        while heap.peek().is_some_and(|e| e.key == top.key) {
            let e = heap.pop().expect("peeked");
            advance(e.stream.0 as usize, &mut heap, &mut streams, order, &mut acc, pp);
        }
        let c = acc as u32;
        if c == 0 {
            continue;
        }
        match divisors.find(&m) {
            Some(k) => {
                if !meter.tick() {
                    return None;
                }
                let g = divisors.polys[k];
                let shift = divisors.lms[k].quotient_of(&m);
                let terms = g.terms();
                if terms.len() > 1 {
                    streams.push(Stream { coeff: p.neg(c), shift, terms, pos: 1 });
                    push(&mut heap, &streams, streams.len() - 1, order);
                }
            }
            None => out.push((m, c)),
        }
    }
    Some(MultiPoly::from_sorted(ring, out))
}

/// Remainder of `f` on division by `divisors` (any nonzero polynomials;
/// they are made monic internally).
pub fn normal_form(f: &MultiPoly, divisors: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
    for g in divisors {
        if g.ring() != f.ring() {
            return Err(PolyError::RingMismatch);
        }
    }
    let monic: Vec<MultiPoly> = divisors.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let divs = Divisors::new(monic.iter());
    let n = f.ring().nvars();
    let stream = Stream { coeff: 1, shift: Monomial::one(n), terms: f.terms(), pos: 0 };
    let mut meter = Meter::new(Budget::unlimited());
    Ok(reduce_streams(f.ring(), vec![stream], &divs, &mut meter).expect("unlimited budget"))
}

impl GroebnerStats {
    fn finish(&mut self, meter: &Meter) {
        self.steps = meter.steps;
        self.elapsed_ms = meter.start.elapsed().as_millis() as u64;
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State {
    ring: Arc<PolyRing>,
    polys: Vec<MultiPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.lm(i), self.lm(j));
        let lcm = a.lcm(b);
        let si = self.sugar[i] + lcm.degree() - a.degree();
        let sj = self.sugar[j] + lcm.degree() - b.degree();
        Pair { i, j, lcm, sugar: si.max(sj) }
    }

    /// Gebauer–Möller update after inserting polynomial `h`.
    fn insert(&mut self, h: MultiPoly, sugar: u32) {
        let h = h.monic();
        let hi = self.polys.len();
        let hlm = *h.leading_monomial().expect("nonzero");
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        // New pairs: a pair survives if its leading terms are coprime or no
        // other surviving/unvisited pair's lcm divides its lcm. Coprime
        // survivors are then discarded (they only served to kill others).
        let mut pending: Vec<Pair> = (0..hi).filter(|&g| self.active[g]).map(|g| self.pair(g, hi)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(pa) = pending.pop() {
            let coprime = self.lm(pa.i).is_coprime(&hlm);
            if coprime || !pending.iter().chain(kept.iter()).any(|pb| pb.lcm.divides(&pa.lcm)) {
                kept.push(pa);
            }
        }
        let fresh: Vec<Pair> = kept.into_iter().filter(|pa| !self.lm(pa.i).is_coprime(&hlm)).collect();
        // Old pairs whose lcm is strictly divisible by LM(h) on both sides.
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|pq| {
                !(hlm.divides(&pq.lcm)
                    && self.lm(pq.i).lcm(&hlm) != pq.lcm
                    && self.lm(pq.j).lcm(&hlm) != pq.lcm)
            })
            .collect();
        self.pairs.extend(fresh);
        for g in 0..hi {
            if self.active[g] && hlm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            order.cmp(&pa.lcm, &pb.lcm).then(pa.sugar.cmp(&pb.sugar))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn diagnostics(&self, meter: &Meter) -> BudgetDiagnostics {
        BudgetDiagnostics {
            steps: meter.steps,
            elapsed_ms: meter.start.elapsed().as_millis() as u64,
            basis_len: self.active.iter().filter(|&&a| a).count(),
            pending_pairs: self.pairs.len(),
        }
    }
}

/// Counters from one basis computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub steps: u64,
    pub pairs: u64,
    pub zero_reductions: u64,
    pub max_basis: usize,
    pub elapsed_ms: u64,
}

/// Reduced Gröbner basis of `ideal` under its ring's order.
pub fn buchberger(ideal: &Ideal, budget: &Budget) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_stats(ideal, budget).map(|(g, _)| g)
}

/// [`buchberger`], also returning work counters.
pub fn buchberger_with_stats(ideal: &Ideal, budget: &Budget) -> Result<(GroebnerBasis, GroebnerStats), GroebnerError> {
    let mut stats = GroebnerStats::default();
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let mut meter = Meter::new(*budget);
    let mut st = State { ring: ring.clone(), polys: vec![], sugar: vec![], active: vec![], pairs: vec![] };
    let budget_err = |st: &State, meter: &Meter| GroebnerError::Budget(st.diagnostics(meter));

    let mut gens: Vec<MultiPoly> = ideal.gens().to_vec();
    gens.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in gens {
        let reduced = {
            let divs = Divisors::new((0..st.polys.len()).filter(|&k| st.active[k]).map(|k| &st.polys[k]));
            let s = Stream { coeff: 1, shift: Monomial::one(n), terms: g.terms(), pos: 0 };
            reduce_streams(&ring, vec![s], &divs, &mut meter).ok_or_else(|| budget_err(&st, &meter))?
        };
        if !reduced.is_zero() {
            let sugar = g.total_degree().unwrap_or(0);
            st.insert(reduced, sugar);
        }
    }

    while let Some(pair) = st.select() {
        stats.pairs += 1;
        let reduced = {
            let (gi, gj) = (&st.polys[pair.i], &st.polys[pair.j]);
            let si = st.lm(pair.i).quotient_of(&pair.lcm);
            let sj = st.lm(pair.j).quotient_of(&pair.lcm);
            let streams = vec![
                Stream { coeff: 1, shift: si, terms: gi.terms(), pos: 1 },
                Stream { coeff: ring.prime().neg(1), shift: sj, terms: gj.terms(), pos: 1 },
            ];
            let divs = Divisors::new((0..st.polys.len()).filter(|&k| st.active[k]).map(|k| &st.polys[k]));
            reduce_streams(&ring, streams, &divs, &mut meter).ok_or_else(|| budget_err(&st, &meter))?
        };
        if reduced.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if reduced.is_constant() {
            stats.finish(&meter);
            return Ok((GroebnerBasis { ring: ring.clone(), elements: vec![MultiPoly::one(&ring)] }, stats));
        }
        st.insert(reduced, pair.sugar);
        stats.max_basis = stats.max_basis.max(st.active.iter().filter(|&&a| a).count());
    }

    // Interreduce the minimal basis.
    let minimal: Vec<MultiPoly> = (0..st.polys.len()).filter(|&k| st.active[k]).map(|k| st.polys[k].clone()).collect();
    if minimal.iter().any(|g| g.is_constant()) {
        stats.finish(&meter);
        return Ok((GroebnerBasis { ring: ring.clone(), elements: vec![MultiPoly::one(&ring)] }, stats));
    }
    let mut elements = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others = Divisors::new(minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, h)| h));
        let s = Stream { coeff: 1, shift: Monomial::one(n), terms: &g.terms()[1..], pos: 0 };
        let tail = reduce_streams(&ring, vec![s], &others, &mut meter).ok_or_else(|| budget_err(&st, &meter))?;
        let head = MultiPoly::from_sorted(&ring, vec![g.terms()[0]]);
        elements.push(head.add(&tail));
    }
    elements.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    stats.finish(&meter);
    Ok((GroebnerBasis { ring, elements }, stats))
}

/// True iff every variable has a pure power among the leading monomials
/// (the unit ideal counts as zero-dimensional: its variety is empty).
pub fn is_zero_dimensional(g: &GroebnerBasis) -> bool {
    if g.is_unit() {
        return true;
    }
    let n = g.ring.nvars();
    let mut seen = vec![false; n];
    for m in g.leading_monomials() {
        if let Some(v) = m.pure_power_var() {
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Number of standard monomials, i.e. the `F_p`-dimension of the quotient.
pub fn quotient_dimension(g: &GroebnerBasis) -> Result<u64, GroebnerError> {
    if g.is_unit() {
        return Ok(0);
    }
    if !is_zero_dimensional(g) {
        return Err(GroebnerError::NotZeroDimensional);
    }
    let lms = g.leading_monomials();
    let n = g.ring.nvars();
    let mut bounds = vec![u32::MAX; n];
    for m in &lms {
        if let Some(v) = m.pure_power_var() {
            bounds[v] = bounds[v].min(m.exp(v));
        }
    }
    let mut exps = vec![0u32; n];
    Ok(count_standard(&lms, &bounds, &mut exps, 0))
}

fn count_standard(lms: &[Monomial], bounds: &[u32], exps: &mut [u32], var: usize) -> u64 {
    let divisible = |exps: &[u32]| lms.iter().any(|m| (0..exps.len()).all(|i| m.exp(i) <= exps[i]));
    if var == exps.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        exps[var] = e;
        // Raising an exponent keeps divisibility, so the first hit ends the run.
        if divisible(exps) {
            break;
        }
        total += count_standard(lms, bounds, exps, var + 1);
    }
    exps[var] = 0;
    total
}
