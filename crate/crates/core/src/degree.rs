//! Degree of the projection-ramification map by random-fiber counting.
//!
//! A trial draws a random change of basis `g` of the space of sections and
//! a random point `A0` of the affine cell `V(A) = rowspan([I | A] g)`, sets
//! `R0 = c(A0)`, and counts the solutions of `c(A) = lambda R0`,
//! `lambda u = 1` via a Gröbner basis. Trials over several primes and
//! seeds are combined into a consensus [`DegreeReport`].

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, GeometryError, GroebnerError};
use crate::ff::{Prime, DEFAULT_PRIMES};
use crate::groebner::{buchberger, Budget, Ideal};
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, MultiPoly, PolyRing, UniPoly};
use rand::seq::SliceRandom;

use crate::rng::{random_matrix, random_nonzero, random_vec, rng_for};
use crate::scroll::{ram_columns, Frame, Partition, RamCoeffs};
use crate::special::{jacobian_det, ternary_monomials, TernaryForm};

const MAX_RETRIES: u64 = 5;

/// How the random change of basis `g` of a chart is drawn.
///
/// Any affine cell of the Grassmannian is dense, so for a generic base
/// point the whole fiber lies in it and the count does not depend on `g`.
/// A monomial `g` (permutation times invertible diagonal) keeps the fiber
/// equations as sparse as the geometry allows, which makes the Gröbner
/// step dramatically cheaper than a dense `g`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    #[default]
    Monomial,
    Dense,
}

impl std::str::FromStr for ChartKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "monomial" => Ok(ChartKind::Monomial),
            "dense" => Ok(ChartKind::Dense),
            _ => Err(format!("unknown chart kind {s:?} (expected monomial or dense)")),
        }
    }
}

fn random_basis_change(p: Prime, n: usize, seed: u64, kind: ChartKind) -> Matrix {
    let mut rng = rng_for(seed, 1);
    match kind {
        ChartKind::Dense => loop {
            let g = random_matrix(&mut rng, p, n, n);
            if linalg::rank(p, &g) == n {
                return g;
            }
        },
        ChartKind::Monomial => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut g = vec![vec![0u32; n]; n];
            for (row, &col) in g.iter_mut().zip(&perm) {
                row[col] = random_nonzero(&mut rng, p).value();
            }
            g
        }
    }
}

/// Coordinates of `rowspan([I_k | A] g)` for a `k x (n-k)` chart point,
/// `a` flattened row by row.
fn cell_coords(p: Prime, g: &Matrix, k: usize, a: &[u32]) -> Matrix {
    let n = g.len();
    let w = n - k;
    (0..k)
        .map(|i| {
            let mut row = g[i].clone();
            for l in 0..w {
                let c = a[i * w + l];
                if c != 0 {
                    for (x, &y) in row.iter_mut().zip(&g[k + l]) {
                        *x = p.add(*x, p.mul(c, y));
                    }
                }
            }
            row
        })
        .collect()
}

/// Symbolic version of [`cell_coords`]: entries are linear forms in the
/// chart variables `0..k*(n-k)` of `ring`.
fn cell_coords_symbolic(ring: &Arc<PolyRing>, g: &Matrix, k: usize) -> Vec<Vec<MultiPoly>> {
    let n = g.len();
    let w = n - k;
    let nv = ring.nvars();
    (0..k)
        .map(|i| {
            (0..n)
                .map(|col| {
                    let mut terms = vec![(Monomial::one(nv), g[i][col])];
                    terms.extend((0..w).map(|l| (Monomial::var(nv, i * w + l), g[k + l][col])));
                    MultiPoly::from_terms(ring, terms)
                })
                .collect()
        })
        .collect()
}

/// Random affine cell of `Gr(r+1, H^0(E))` for a scroll.
#[derive(Clone, Debug)]
pub struct ScrollChart {
    partition: Partition,
    p: Prime,
    g: Matrix,
}

impl ScrollChart {
    pub fn random(partition: &Partition, p: Prime, seed: u64, kind: ChartKind) -> ScrollChart {
        let g = random_basis_change(p, partition.h0_dim(), seed, kind);
        ScrollChart { partition: partition.clone(), p, g }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn basis_change(&self) -> &Matrix {
        &self.g
    }

    /// Number of chart coordinates, `(r+1)(d-1)`.
    pub fn nvars(&self) -> usize {
        (self.partition.r() + 1) * (self.partition.d() - 1)
    }

    pub fn coords(&self, a: &[u32]) -> Matrix {
        assert_eq!(a.len(), self.nvars());
        cell_coords(self.p, &self.g, self.partition.r() + 1, a)
    }

    pub fn frame(&self, a: &[u32]) -> Frame {
        Frame::from_coords(&self.partition, self.p, &self.coords(a)).expect("chart coordinates fit")
    }

    /// `c(A)` via the column-linear determinant.
    pub fn ram(&self, a: &[u32]) -> RamCoeffs {
        let frame = self.frame(a);
        let dm: Vec<Vec<UniPoly>> = frame.rows().iter().map(|r| r.iter().map(|f| f.derivative()).collect()).collect();
        RamCoeffs::new(ram_columns(frame.rows(), &dm))
    }

    pub fn ram_slots(&self, a: &[u32]) -> Vec<u32> {
        self.ram(a).to_slots(&self.partition)
    }

    /// Polynomials `c_m(A)`, one per coefficient slot, in `ring`, whose
    /// first `nvars()` variables are the chart coordinates.
    pub fn symbolic_slots(&self, ring: &Arc<PolyRing>) -> Vec<MultiPoly> {
        let part = &self.partition;
        let (r, n) = (part.r(), self.nvars());
        assert!(ring.nvars() > n);
        // Work in (chart vars, t), then split off powers of t.
        let mut names: Vec<String> = ring.names()[..n].to_vec();
        names.push("t".into());
        let ring_t = PolyRing::new(&names, self.p).expect("variable count checked");
        let t = n;
        let coords = cell_coords_symbolic(&ring_t, &self.g, r + 1);
        let nv = ring_t.nvars();
        let m: Vec<Vec<MultiPoly>> = coords
            .iter()
            .map(|row| {
                (0..r)
                    .map(|j| {
                        let off = part.section_offset(j);
                        (0..=part.parts()[j] as usize).fold(MultiPoly::zero(&ring_t), |acc, k| {
                            acc.add(&row[off + k].mul_term(&Monomial::var_pow(nv, t, k as u8), 1))
                        })
                    })
                    .collect()
            })
            .collect();
        let dm: Vec<Vec<MultiPoly>> = m.iter().map(|row| row.iter().map(|f| f.partial(t)).collect()).collect();
        let cols = ram_columns(&m, &dm);
        let chart_vars: Vec<usize> = (0..n).collect();
        let mut slots = Vec::with_capacity(part.slot_count());
        for (j, c) in cols.iter().enumerate() {
            let mut block = vec![MultiPoly::zero(ring); part.slot_len(j)];
            let var_map: Vec<usize> = chart_vars.iter().copied().chain(std::iter::once(usize::MAX)).collect();
            for (mono, coeff) in c.terms() {
                let k = mono.exp(t) as usize;
                assert!(k < block.len(), "degree bound violated");
                let mut exps = vec![0u32; ring.nvars()];
                for v in 0..n {
                    exps[var_map[v]] = mono.exp(v);
                }
                let term = MultiPoly::from_terms(ring, [(Monomial::from_exps(&exps).expect("small"), *coeff)]);
                block[k] = block[k].add(&term);
            }
            slots.extend(block);
        }
        slots
    }
}

/// Random affine cell of `Gr(3, Sym^2)` for nets of conics.
#[derive(Clone, Debug)]
pub struct VeroneseChart {
    p: Prime,
    g: Matrix,
}

impl VeroneseChart {
    pub const NVARS: usize = 9;
    pub const SLOTS: usize = 10;

    pub fn random(p: Prime, seed: u64, kind: ChartKind) -> VeroneseChart {
        VeroneseChart { p, g: random_basis_change(p, 6, seed, kind) }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn net(&self, a: &[u32]) -> [TernaryForm; 3] {
        let rows = cell_coords(self.p, &self.g, 3, a);
        let f = |i: usize| TernaryForm::new(2, self.p, rows[i].clone()).expect("six coordinates");
        [f(0), f(1), f(2)]
    }

    pub fn ram_slots(&self, a: &[u32]) -> Vec<u32> {
        let [q1, q2, q3] = self.net(a);
        crate::special::jacobian_cubic(&q1, &q2, &q3).expect("quadrics").coeffs().to_vec()
    }

    pub fn symbolic_slots(&self, ring: &Arc<PolyRing>) -> Vec<MultiPoly> {
        let n = Self::NVARS;
        let mut names: Vec<String> = ring.names()[..n].to_vec();
        names.extend(["x", "y", "z"].map(String::from));
        let ring_x = PolyRing::new(&names, self.p).expect("twelve variables");
        let xyz = [n, n + 1, n + 2];
        let nv = ring_x.nvars();
        let coords = cell_coords_symbolic(&ring_x, &self.g, 3);
        let mons = ternary_monomials(2);
        let quad = |row: &Vec<MultiPoly>| {
            row.iter().zip(&mons).fold(MultiPoly::zero(&ring_x), |acc, (c, e)| {
                let mut exps = vec![0u32; nv];
                for v in 0..3 {
                    exps[xyz[v]] = e[v];
                }
                acc.add(&c.mul_term(&Monomial::from_exps(&exps).expect("small"), 1))
            })
        };
        let qs = [quad(&coords[0]), quad(&coords[1]), quad(&coords[2])];
        let jac = jacobian_det(&qs, xyz);
        let cubic = ternary_monomials(3);
        let mut slots = vec![MultiPoly::zero(ring); Self::SLOTS];
        for (mono, coeff) in jac.terms() {
            let e = [mono.exp(xyz[0]), mono.exp(xyz[1]), mono.exp(xyz[2])];
            let k = cubic.iter().position(|x| *x == e).expect("cubic in x, y, z");
            let mut exps = vec![0u32; ring.nvars()];
            for v in 0..n {
                exps[v] = mono.exp(v);
            }
            let term = MultiPoly::from_terms(ring, [(Monomial::from_exps(&exps).expect("small"), *coeff)]);
            slots[k] = slots[k].add(&term);
        }
        slots
    }
}

/// Which geometry a fiber ideal belongs to.
#[derive(Clone, Debug)]
pub enum Geometry {
    Scroll(ScrollChart),
    Veronese(VeroneseChart),
}

impl Geometry {
    fn nvars(&self) -> usize {
        match self {
            Geometry::Scroll(c) => c.nvars(),
            Geometry::Veronese(_) => VeroneseChart::NVARS,
        }
    }

    fn prime(&self) -> Prime {
        match self {
            Geometry::Scroll(c) => c.prime(),
            Geometry::Veronese(c) => c.prime(),
        }
    }

    fn ram_slots(&self, a: &[u32]) -> Vec<u32> {
        match self {
            Geometry::Scroll(c) => c.ram_slots(a),
            Geometry::Veronese(c) => c.ram_slots(a),
        }
    }

    fn symbolic_slots(&self, ring: &Arc<PolyRing>) -> Vec<MultiPoly> {
        match self {
            Geometry::Scroll(c) => c.symbolic_slots(ring),
            Geometry::Veronese(c) => c.symbolic_slots(ring),
        }
    }

    fn var_names(&self) -> Vec<String> {
        let mut names: Vec<String> = match self {
            Geometry::Scroll(c) => {
                let w = c.partition().d() - 1;
                (0..c.nvars()).map(|v| format!("a{}_{}", v / w, v % w)).collect()
            }
            Geometry::Veronese(_) => (0..9).map(|v| format!("a{}_{}", v / 3, v % 3)).collect(),
        };
        names.push("lambda".into());
        names.push("u".into());
        names
    }
}

/// A fiber ideal together with how it was drawn.
#[derive(Clone, Debug)]
pub struct FiberIdealSpec {
    pub geometry: Geometry,
    pub seed: u64,
    pub a0: Vec<u32>,
    pub r0: Vec<u32>,
    pub ideal: Ideal,
}

impl FiberIdealSpec {
    pub fn prime(&self) -> Prime {
        self.geometry.prime()
    }
}

fn fiber_ideal(geometry: Geometry, seed: u64) -> Result<FiberIdealSpec, Error> {
    let p = geometry.prime();
    let n = geometry.nvars();
    let (a0, r0) = (0..=MAX_RETRIES)
        .find_map(|attempt| {
            let a0 = random_vec(&mut rng_for(seed, 2 + attempt), p, n);
            let r0 = geometry.ram_slots(&a0);
            r0.iter().any(|&x| x != 0).then_some((a0, r0))
        })
        .ok_or(GeometryError::ImproperRamification(MAX_RETRIES as usize + 1))?;
    let ring = PolyRing::new(&geometry.var_names(), p)?;
    let (lambda, u) = (MultiPoly::var(&ring, n), MultiPoly::var(&ring, n + 1));
    let mut gens: Vec<MultiPoly> = geometry
        .symbolic_slots(&ring)
        .into_iter()
        .zip(&r0)
        .map(|(c, &r)| c.sub(&lambda.mul_term(&Monomial::one(n + 2), r)))
        .collect();
    gens.push(lambda.mul(&u).sub(&MultiPoly::one(&ring)));
    let ideal = Ideal::new(&ring, gens)?;
    Ok(FiberIdealSpec { geometry, seed, a0, r0, ideal })
}

/// Fiber ideal of the scroll's projection-ramification map through a
/// random point of its image.
pub fn build_fiber_ideal(partition: &Partition, p: Prime, seed: u64, kind: ChartKind) -> Result<FiberIdealSpec, Error> {
    fiber_ideal(Geometry::Scroll(ScrollChart::random(partition, p, seed, kind)), seed)
}

/// Same for the Veronese surface (nets of conics, Jacobian cubics).
pub fn build_veronese_fiber_ideal(p: Prime, seed: u64, kind: ChartKind) -> Result<FiberIdealSpec, Error> {
    fiber_ideal(Geometry::Veronese(VeroneseChart::random(p, seed, kind)), seed)
}

/// One fiber count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub prime: u32,
    pub seed: u64,
    /// Quotient dimension, present iff the fiber ideal is zero-dimensional.
    pub value: Option<u64>,
    pub zero_dim: bool,
    pub ms: u64,
    /// Set when the Gröbner budget ran out before a basis was found.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub partition: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    pub degree: Option<u64>,
    pub trials: Vec<TrialRecord>,
    pub agreement: bool,
}

impl DegreeReport {
    pub fn budget_exhausted(&self) -> bool {
        self.trials.iter().any(|t| t.budget_exhausted)
    }

    /// Zeroes the timing fields (for byte-identical replay).
    pub fn without_timing(mut self) -> DegreeReport {
        for t in &mut self.trials {
            t.ms = 0;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeConfig {
    pub primes: Vec<Prime>,
    pub trials: usize,
    pub seed: u64,
    pub budget: Budget,
    pub chart: ChartKind,
}

impl Default for DegreeConfig {
    fn default() -> DegreeConfig {
        DegreeConfig {
            primes: DEFAULT_PRIMES[..2].iter().map(|&p| Prime::new(p as u64).expect("default prime")).collect(),
            trials: 3,
            seed: 1,
            budget: Budget::default(),
            chart: ChartKind::default(),
        }
    }
}

impl DegreeConfig {
    /// `(prime, seed)` of every trial: seeds `seed, seed+1, ...` per prime.
    pub fn schedule(&self) -> Vec<(Prime, u64)> {
        self.primes
            .iter()
            .flat_map(|&p| (0..self.trials as u64).map(move |k| (p, self.seed.wrapping_add(k))))
            .collect()
    }
}

/// Runs one trial. Implemented by the real geometries and by test mocks.
pub trait TrialRunner: Sync {
    fn run(&self, p: Prime, seed: u64, config: &DegreeConfig) -> Result<TrialRecord, Error>;
}

fn count_fiber(spec: &FiberIdealSpec, budget: &Budget) -> Result<TrialRecord, Error> {
    let start = Instant::now();
    let mut record = TrialRecord {
        prime: spec.prime().get(),
        seed: spec.seed,
        value: None,
        zero_dim: false,
        ms: 0,
        budget_exhausted: false,
    };
    match buchberger(&spec.ideal, budget) {
        Ok(gb) => {
            if gb.is_zero_dimensional() {
                record.zero_dim = true;
                record.value = Some(gb.quotient_dimension()?);
            }
        }
        Err(GroebnerError::Budget(_)) => record.budget_exhausted = true,
        Err(e) => return Err(e.into()),
    }
    record.ms = start.elapsed().as_millis() as u64;
    Ok(record)
}

pub struct ScrollRunner(pub Partition);

impl TrialRunner for ScrollRunner {
    fn run(&self, p: Prime, seed: u64, config: &DegreeConfig) -> Result<TrialRecord, Error> {
        count_fiber(&build_fiber_ideal(&self.0, p, seed, config.chart)?, &config.budget)
    }
}

pub struct VeroneseRunner;

impl TrialRunner for VeroneseRunner {
    fn run(&self, p: Prime, seed: u64, config: &DegreeConfig) -> Result<TrialRecord, Error> {
        count_fiber(&build_veronese_fiber_ideal(p, seed, config.chart)?, &config.budget)
    }
}

/// Runs every scheduled trial (in parallel) and folds them into a report.
///
/// A degree is reported when at least three zero-dimensional trials over
/// at least two primes all agree. If every trial is positive-dimensional
/// (again at least three over two primes) the map is not dominant and the
/// degree is 0. Anything else, including a budget overrun, leaves the
/// degree empty with `agreement = false`.
pub fn consensus(runner: &dyn TrialRunner, partition: Vec<u32>, config: &DegreeConfig) -> Result<DegreeReport, Error> {
    let trials: Vec<TrialRecord> = config
        .schedule()
        .into_par_iter()
        .map(|(p, seed)| runner.run(p, seed, config))
        .collect::<Result<_, _>>()?;
    let distinct_primes = |ts: &[&TrialRecord]| {
        let mut ps: Vec<u32> = ts.iter().map(|t| t.prime).collect();
        ps.sort_unstable();
        ps.dedup();
        ps.len()
    };
    let zero_dim: Vec<&TrialRecord> = trials.iter().filter(|t| t.zero_dim).collect();
    let budget = trials.iter().any(|t| t.budget_exhausted);
    let (degree, agreement) = if budget {
        (None, false)
    } else if zero_dim.len() == trials.len() {
        let first = zero_dim.first().and_then(|t| t.value);
        let agree = zero_dim.iter().all(|t| t.value == first);
        if agree && zero_dim.len() >= 3 && distinct_primes(&zero_dim) >= 2 {
            (first, true)
        } else {
            (None, false)
        }
    } else if zero_dim.is_empty() {
        let all: Vec<&TrialRecord> = trials.iter().collect();
        if all.len() >= 3 && distinct_primes(&all) >= 2 {
            (Some(0), true)
        } else {
            (None, false)
        }
    } else {
        (None, false)
    };
    Ok(DegreeReport { partition, geometry: None, degree, trials, agreement })
}

/// Degree of the projection-ramification map of the scroll.
pub fn phi(partition: &Partition, config: &DegreeConfig) -> Result<DegreeReport, Error> {
    consensus(&ScrollRunner(partition.clone()), partition.parts().to_vec(), config)
}

/// Degree of the projection-ramification map of the Veronese surface.
pub fn veronese_degree(config: &DegreeConfig) -> Result<DegreeReport, Error> {
    let mut report = consensus(&VeroneseRunner, vec![], config)?;
    report.geometry = Some("veronese".into());
    Ok(report)
}

/// Exhaustive count of `F_q`-rational chart points whose ramification is
/// a nonzero multiple of `R0`. A lower bound for the degree.
pub fn brute_force_fiber_count(partition: &Partition, q: u64, seed: u64) -> Result<u64, Error> {
    let p = Prime::new(q)?;
    let chart = ScrollChart::random(partition, p, seed, ChartKind::Dense);
    let n = chart.nvars();
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= 100_000_000)
        .ok_or_else(|| GeometryError::SearchTooLarge(format!("{q}^{n} chart points")))?;
    let r0 = (0..=MAX_RETRIES)
        .find_map(|attempt| {
            let a0 = random_vec(&mut rng_for(seed, 2 + attempt), p, n);
            let r0 = chart.ram_slots(&a0);
            r0.iter().any(|&x| x != 0).then_some(r0)
        })
        .ok_or(GeometryError::ImproperRamification(MAX_RETRIES as usize + 1))?;
    let pivot = r0.iter().position(|&x| x != 0).expect("nonzero");
    let pivot_inv = p.inv(r0[pivot]).expect("nonzero");
    let count = (0..total)
        .into_par_iter()
        .filter(|&index| {
            let mut a = vec![0u32; n];
            let mut rest = index;
            for x in a.iter_mut() {
                *x = (rest % q) as u32;
                rest /= q;
            }
            let c = chart.ram_slots(&a);
            let mu = p.mul(c[pivot], pivot_inv);
            mu != 0 && c.iter().zip(&r0).all(|(&ci, &ri)| ci == p.mul(mu, ri))
        })
        .count();
    Ok(count as u64)
}

/// `P` lies below `Q` in dominance order: same rank and degree, and every
/// prefix sum of `P`'s ascending parts is at most that of `Q`.
pub fn dominates(p: &Partition, q: &Partition) -> bool {
    if p.r() != q.r() || p.d() != q.d() {
        return false;
    }
    let mut sp = 0;
    let mut sq = 0;
    p.parts().iter().zip(q.parts()).all(|(&a, &b)| {
        sp += a;
        sq += b;
        sp <= sq
    })
}

/// `phi(P) <= phi(Q)` for `P` below `Q`; `None` if either report lacks a
/// consensus degree or the partitions are not comparable.
pub fn monotonicity_check(p: &Partition, p_report: &DegreeReport, q: &Partition, q_report: &DegreeReport) -> Option<bool> {
    if !dominates(p, q) {
        return None;
    }
    Some(p_report.degree? <= q_report.degree?)
}
