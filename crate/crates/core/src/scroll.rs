//! Rational normal scrolls `P(O(a_1) + ... + O(a_r))` over the chart
//! `Spec k[t]`: frames of sections, ramification sections computed three
//! ways, and the stabilizer linear algebra behind failure of maximal
//! variation.
//!
//! Sections of `O(a_j)` are polynomials of degree `<= a_j` in `t`. A section
//! of `E` has coordinates in the basis `t^k X_j` (`k = 0..=a_j`), listed
//! with `j` ascending and `k` ascending inside each block.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::ff::{Fp, Prime};
use crate::linalg;
use crate::poly::{det, det_poly_matrix, CommRing, Monomial, MultiPoly, PolyRing, UniPoly};
use crate::rng::{random_matrix, random_vec, rng_for};

/// Splitting type `a_1 <= ... <= a_r` of an ample bundle on `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; rejects empty input and non-positive parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Partition, GeometryError> {
        if parts.is_empty() {
            return Err(GeometryError::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(GeometryError::InvalidPartition(format!("{parts:?} has a non-positive part")));
        }
        if parts.iter().any(|&a| a > 64) || parts.len() > 16 {
            return Err(GeometryError::InvalidPartition(format!("{parts:?} is too large")));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn d(&self) -> usize {
        self.parts.iter().sum::<u32>() as usize
    }

    /// `h^0(E) = d + r`.
    pub fn h0_dim(&self) -> usize {
        self.d() + self.r()
    }

    /// `((r+1)(d-1), rd + d - r - 1)`: dimensions of the Grassmannian of
    /// projections and of the target linear system. They always agree.
    pub fn dims_match(&self) -> (usize, usize) {
        let (r, d) = (self.r(), self.d());
        let dim_gr = (r + 1) * (d - 1);
        let dim_target = r * d + d - r - 1;
        debug_assert_eq!(dim_gr, dim_target);
        (dim_gr, dim_target)
    }

    /// Number of coefficients of `c_j`: `a_j + d - 1`.
    pub fn slot_len(&self, j: usize) -> usize {
        self.parts[j] as usize + self.d() - 1
    }

    /// Total length of a serialized [`RamCoeffs`]: `rd + d - r`.
    pub fn slot_count(&self) -> usize {
        (0..self.r()).map(|j| self.slot_len(j)).sum()
    }

    /// Offset of block `j` in section coordinates.
    pub fn section_offset(&self, j: usize) -> usize {
        self.parts[..j].iter().map(|&a| a as usize + 1).sum()
    }

    /// `(j, k)` for each coordinate of a section, in layout order.
    pub fn section_basis(&self) -> Vec<(usize, usize)> {
        (0..self.r()).flat_map(|j| (0..=self.parts[j] as usize).map(move |k| (j, k))).collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = GeometryError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = GeometryError;

    /// Comma-separated parts, e.g. `"1,1,2"`.
    fn from_str(s: &str) -> Result<Partition, GeometryError> {
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GeometryError::InvalidPartition(format!("cannot parse {s:?}")))?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `C(n, k)` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Lower bound `C(m,r)(n-r) + C(m-1,r)` on the dimension of the target
/// linear system.
pub fn kymh_lower_bound(n: u64, r: u64, m: u64) -> u64 {
    binomial(m, r) * (n - r) + binomial(m - 1, r)
}

/// `(r-1)(b-a+1) >= b+d-1` with `d = (r-1)a + b`: the dimension count that
/// forces positive-dimensional stabilizers on the target for
/// `E = O(a)^{r-1} + O(b)`.
pub fn requirement_holds(a: u64, b: u64, r: u64) -> bool {
    let d = (r - 1) * a + b;
    (r - 1) * (b - a + 1) >= b + d - 1
}

/// `r + 1` sections of `E`: `rows[i][j]` is the `X_j` component of `v_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    partition: Partition,
    rows: Vec<Vec<UniPoly>>,
}

impl Frame {
    pub fn new(partition: &Partition, rows: Vec<Vec<UniPoly>>) -> Result<Frame, GeometryError> {
        let r = partition.r();
        if rows.len() != r + 1 {
            return Err(GeometryError::FrameShape(format!("expected {} sections, got {}", r + 1, rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != r {
                return Err(GeometryError::FrameShape(format!("section {i} has {} components", row.len())));
            }
            for (j, f) in row.iter().enumerate() {
                if f.degree().is_some_and(|deg| deg > partition.parts[j] as usize) {
                    return Err(GeometryError::FrameShape(format!(
                        "component {j} of section {i} has degree {:?} > {}",
                        f.degree(),
                        partition.parts[j]
                    )));
                }
            }
        }
        Ok(Frame { partition: partition.clone(), rows })
    }

    /// Builds a frame from section coordinates (one row of `d + r`
    /// residues per section).
    pub fn from_coords(partition: &Partition, p: Prime, coords: &[Vec<u32>]) -> Result<Frame, GeometryError> {
        let rows = coords
            .iter()
            .map(|c| {
                if c.len() != partition.h0_dim() {
                    return Err(GeometryError::FrameShape(format!("coordinate row of length {}", c.len())));
                }
                Ok((0..partition.r())
                    .map(|j| {
                        let off = partition.section_offset(j);
                        UniPoly::from_raw(p, c[off..off + partition.parts[j] as usize + 1].to_vec())
                    })
                    .collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Frame::new(partition, rows)
    }

    /// Uniformly random frame from `(seed, stream)`.
    pub fn random(partition: &Partition, p: Prime, seed: u64, stream: u64) -> Frame {
        let mut rng = rng_for(seed, stream);
        let coords = random_matrix(&mut rng, p, partition.r() + 1, partition.h0_dim());
        Frame::from_coords(partition, p, &coords).expect("shape is correct by construction")
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn rows(&self) -> &[Vec<UniPoly>] {
        &self.rows
    }

    pub fn prime(&self) -> Prime {
        self.rows[0][0].prime()
    }

    /// Applies a scalar `(r+1) x (r+1)` matrix to the basis of sections.
    pub fn transform(&self, g: &[Vec<Fp>]) -> Frame {
        let p = self.prime();
        let rows = g
            .iter()
            .map(|gi| {
                (0..self.partition.r())
                    .map(|j| {
                        gi.iter()
                            .zip(&self.rows)
                            .fold(UniPoly::zero(p), |acc, (c, row)| acc.add(&row[j].scale(*c)))
                    })
                    .collect()
            })
            .collect();
        Frame { partition: self.partition.clone(), rows }
    }

    /// `t -> t + c` in every component.
    pub fn shift(&self, c: Fp) -> Frame {
        let rows = self.rows.iter().map(|row| row.iter().map(|f| f.shift(c)).collect()).collect();
        Frame { partition: self.partition.clone(), rows }
    }

    fn derivative_rows(&self) -> Vec<Vec<UniPoly>> {
        self.rows.iter().map(|row| row.iter().map(|f| f.derivative()).collect()).collect()
    }
}

/// Components `c_1, ..., c_r` of a ramification section,
/// `deg c_j <= a_j + d - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamCoeffs {
    polys: Vec<UniPoly>,
}

impl RamCoeffs {
    pub fn new(polys: Vec<UniPoly>) -> RamCoeffs {
        RamCoeffs { polys }
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(|c| c.is_zero())
    }

    /// True iff every `c_j` respects its degree bound.
    pub fn fits(&self, partition: &Partition) -> bool {
        self.polys.len() == partition.r()
            && self
                .polys
                .iter()
                .enumerate()
                .all(|(j, c)| c.degree().is_none_or(|deg| deg < partition.slot_len(j)))
    }

    /// Concatenated ascending coefficients, `a_j + d - 1` per component.
    pub fn to_slots(&self, partition: &Partition) -> Vec<u32> {
        assert!(self.fits(partition), "ramification section exceeds its degree bounds");
        (0..partition.r()).flat_map(|j| self.polys[j].padded(partition.slot_len(j))).collect()
    }

    pub fn from_slots(partition: &Partition, p: Prime, slots: &[u32]) -> RamCoeffs {
        assert_eq!(slots.len(), partition.slot_count());
        let mut off = 0;
        let polys = (0..partition.r())
            .map(|j| {
                let len = partition.slot_len(j);
                let f = UniPoly::from_raw(p, slots[off..off + len].to_vec());
                off += len;
                f
            })
            .collect();
        RamCoeffs { polys }
    }

    pub fn scale(&self, c: Fp) -> RamCoeffs {
        RamCoeffs { polys: self.polys.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn neg(&self) -> RamCoeffs {
        RamCoeffs { polys: self.polys.iter().map(|f| f.neg()).collect() }
    }

    pub fn shift(&self, c: Fp) -> RamCoeffs {
        RamCoeffs { polys: self.polys.iter().map(|f| f.shift(c)).collect() }
    }
}

/// `c_j = det [m | dm_{., j}]`: the coefficient of `X_j` in the determinant
/// whose last column is `sum_j dm_{ij} X_j`, using linearity in that column.
pub fn ram_columns<T: CommRing>(m: &[Vec<T>], dm: &[Vec<T>]) -> Vec<T> {
    let r = m.len() - 1;
    (0..r)
        .map(|j| {
            let mat: Vec<Vec<T>> = (0..=r)
                .map(|i| {
                    let mut row = m[i].clone();
                    row.push(dm[i][j].clone());
                    row
                })
                .collect();
            det(&mat)
        })
        .collect()
}

/// Ramification section as the determinant of the `(r+1) x (r+1)` matrix
/// `[m_{ij} | sum_j m'_{ij} X_j]`, expanded over `F_p[t, X_1..X_r]` and
/// read off coefficient by coefficient.
pub fn ram_determinant(frame: &Frame) -> RamCoeffs {
    let partition = frame.partition();
    let r = partition.r();
    let p = frame.prime();
    let mut names = vec!["t".to_string()];
    names.extend((1..=r).map(|j| format!("X{j}")));
    let ring = PolyRing::new(&names, p).expect("at most 16 parts");
    let n = ring.nvars();
    let lift = |f: &UniPoly| {
        MultiPoly::from_terms(
            &ring,
            f.raw_coeffs().iter().enumerate().map(|(k, &c)| (Monomial::var_pow(n, 0, k as u8), c)),
        )
    };
    let dm = frame.derivative_rows();
    let matrix: Vec<Vec<MultiPoly>> = (0..=r)
        .map(|i| {
            let mut row: Vec<MultiPoly> = frame.rows[i].iter().map(lift).collect();
            let last = (0..r).fold(MultiPoly::zero(&ring), |acc, j| {
                acc.add(&lift(&dm[i][j]).mul(&MultiPoly::var(&ring, j + 1)))
            });
            row.push(last);
            row
        })
        .collect();
    let full = det_poly_matrix(&matrix);
    let mut coeffs = vec![Vec::<u32>::new(); r];
    for (mono, c) in full.terms() {
        let xs: Vec<usize> = (1..=r).filter(|&v| mono.exp(v) > 0).collect();
        assert!(xs.len() == 1 && mono.exp(xs[0]) == 1, "determinant is linear in X");
        let j = xs[0] - 1;
        let k = mono.exp(0) as usize;
        if coeffs[j].len() <= k {
            coeffs[j].resize(k + 1, 0);
        }
        coeffs[j][k] = *c;
    }
    RamCoeffs::new(coeffs.into_iter().map(|c| UniPoly::from_raw(p, c)).collect())
}

/// Differential construction: `c_j = sum_i M_i m'_{ij}` with signed minors
/// `M_l = (-1)^l det(m_{ij} | i != l)`, rows indexed `0..=r`.
///
/// Expanding the determinant along its last column gives
/// `(-1)^r sum_i M_i m'_{ij}`, so the result is multiplied by `(-1)^r` to
/// agree with [`ram_determinant`] exactly.
pub fn ram_differential(frame: &Frame) -> RamCoeffs {
    let r = frame.partition().r();
    let p = frame.prime();
    let minors: Vec<UniPoly> = (0..=r)
        .map(|l| {
            let sub: Vec<Vec<UniPoly>> =
                (0..=r).filter(|&i| i != l).map(|i| frame.rows[i].clone()).collect();
            let m = det(&sub);
            if l % 2 == 0 {
                m
            } else {
                m.neg()
            }
        })
        .collect();
    let dm = frame.derivative_rows();
    let polys = (0..r)
        .map(|j| {
            let s = (0..=r).fold(UniPoly::zero(p), |acc, i| acc.add(&minors[i].mul(&dm[i][j])));
            if r % 2 == 0 {
                s
            } else {
                s.neg()
            }
        })
        .collect();
    RamCoeffs::new(polys)
}

/// `f g' - f' g`.
pub fn wronskian(f: &UniPoly, g: &UniPoly) -> UniPoly {
    f.mul(&g.derivative()).sub(&f.derivative().mul(g))
}

/// `ram_determinant` of the eccentric-threefold frame equals
/// `THREEFOLD_SIGN` times [`ram_threefold_closed`].
pub const THREEFOLD_SIGN: i64 = -1;

/// The frame `{X1 + a X3, X2 + b X3, t X1 + c X3, t X2 + d X3}` on
/// `O(1) + O(1) + O(k+1)`.
pub fn threefold_frame(a: &UniPoly, b: &UniPoly, c: &UniPoly, d: &UniPoly, k: u32) -> Result<Frame, GeometryError> {
    let p = a.prime();
    let partition = Partition::new(vec![1, 1, k + 1])?;
    let (zero, one, t) = (UniPoly::zero(p), UniPoly::one(p), UniPoly::new(p, &[0, 1]));
    let rows = vec![
        vec![one.clone(), zero.clone(), a.clone()],
        vec![zero.clone(), one, b.clone()],
        vec![t.clone(), zero.clone(), c.clone()],
        vec![zero, t, d.clone()],
    ];
    Frame::new(&partition, rows)
}

/// Closed form `(alpha, beta, gamma)` with `alpha = d - bt`,
/// `beta = at - c`, `gamma = alpha' beta - beta' alpha + alpha a + beta b`.
pub fn ram_threefold_closed(a: &UniPoly, b: &UniPoly, c: &UniPoly, d: &UniPoly, k: u32) -> Result<RamCoeffs, GeometryError> {
    for (name, f) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if f.degree().is_some_and(|deg| deg > k as usize + 1) {
            return Err(GeometryError::FrameShape(format!("{name} has degree above {}", k + 1)));
        }
    }
    let t = UniPoly::new(a.prime(), &[0, 1]);
    let alpha = d.sub(&b.mul(&t));
    let beta = a.mul(&t).sub(c);
    let gamma = alpha
        .derivative()
        .mul(&beta)
        .sub(&beta.derivative().mul(&alpha))
        .add(&alpha.mul(a))
        .add(&beta.mul(b));
    Ok(RamCoeffs::new(vec![alpha, beta, gamma]))
}

/// Parameters of `End(E)`: for each ordered pair `(i, j)` with
/// `a_j >= a_i`, a polynomial of degree `a_j - a_i` carrying component `i`
/// into component `j`. Returns `(i, j, k)` for the coefficient of `t^k`.
fn endomorphism_basis(partition: &Partition) -> Vec<(usize, usize, usize)> {
    let a = partition.parts();
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in 0..a.len() {
            if a[j] >= a[i] {
                out.extend((0..=(a[j] - a[i]) as usize).map(|k| (i, j, k)));
            }
        }
    }
    out
}

/// Image of a tuple of component polynomials under one endomorphism basis
/// element, as a coordinate vector with the given block layout.
fn apply_endo(
    (i, j, k): (usize, usize, usize),
    comps: &[UniPoly],
    block_len: &[usize],
) -> Vec<u32> {
    let mut out = vec![0u32; block_len.iter().sum()];
    let off: usize = block_len[..j].iter().sum();
    for (e, &c) in comps[i].raw_coeffs().iter().enumerate() {
        out[off + e + k] = c;
    }
    out
}

const STABILIZER_TRIES: u64 = 3;

/// Dimension of the stabilizer in `Aut(PE/P^1)` of a random point of the
/// target: infinitesimal endomorphisms `dM` with `dM v` in `span(v)`, less
/// scalars. Minimum over three seeded draws.
pub fn stabilizer_dim_target(partition: &Partition, p: Prime, seed: u64) -> Result<usize, GeometryError> {
    let blocks: Vec<usize> = (0..partition.r()).map(|j| partition.slot_len(j)).collect();
    let basis = endomorphism_basis(partition);
    let mut best: Option<usize> = None;
    for attempt in 0..STABILIZER_TRIES {
        let mut rng = rng_for(seed, 0x5ab0 + attempt);
        let v = RamCoeffs::from_slots(partition, p, &random_vec(&mut rng, p, partition.slot_count()));
        if v.is_zero() {
            continue;
        }
        // Unknowns: endomorphism coefficients, then the eigenvalue c.
        let rows = partition.slot_count();
        let mut m = vec![vec![0u32; basis.len() + 1]; rows];
        for (col, &b) in basis.iter().enumerate() {
            for (row, x) in apply_endo(b, v.polys(), &blocks).into_iter().enumerate() {
                m[row][col] = x;
            }
        }
        for (row, x) in v.to_slots(partition).into_iter().enumerate() {
            m[row][basis.len()] = p.neg(x);
        }
        let dim = basis.len() + 1 - linalg::rank(p, &m);
        best = Some(best.map_or(dim - 1, |b| b.min(dim - 1)));
    }
    best.ok_or_else(|| GeometryError::Degenerate("every stabilizer draw was degenerate".into()))
}

/// Dimension of the stabilizer of a random `(r+1)`-plane in `H^0(E)`:
/// endomorphisms mapping the plane into itself, less scalars. Minimum over
/// three seeded draws.
pub fn stabilizer_dim_source(partition: &Partition, p: Prime, seed: u64) -> Result<usize, GeometryError> {
    let r = partition.r();
    let n = partition.h0_dim();
    let blocks: Vec<usize> = partition.parts().iter().map(|&a| a as usize + 1).collect();
    let basis = endomorphism_basis(partition);
    let mut best: Option<usize> = None;
    for attempt in 0..STABILIZER_TRIES {
        let frame = Frame::random(partition, p, seed, 0x5041 + attempt);
        let coords: Vec<Vec<u32>> = frame
            .rows()
            .iter()
            .map(|row| (0..r).flat_map(|j| row[j].padded(blocks[j])).collect())
            .collect();
        if linalg::rank(p, &coords) < r + 1 {
            continue;
        }
        // Unknowns: endomorphism coefficients, then C_{kl}; equations
        // dM v_k - sum_l C_{kl} v_l = 0 in each of the d + r coordinates.
        let unknowns = basis.len() + (r + 1) * (r + 1);
        let mut m = vec![vec![0u32; unknowns]; (r + 1) * n];
        for (k, row) in frame.rows().iter().enumerate() {
            for (col, &b) in basis.iter().enumerate() {
                for (e, x) in apply_endo(b, row, &blocks).into_iter().enumerate() {
                    m[k * n + e][col] = x;
                }
            }
            for l in 0..=r {
                for (e, &x) in coords[l].iter().enumerate() {
                    m[k * n + e][basis.len() + k * (r + 1) + l] = p.neg(x);
                }
            }
        }
        let dim = unknowns - linalg::rank(p, &m);
        best = Some(best.map_or(dim - 1, |b| b.min(dim - 1)));
    }
    best.ok_or_else(|| GeometryError::Degenerate("every stabilizer draw was degenerate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Prime {
        Prime::new(32003).unwrap()
    }

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::new(p(), c)
    }

    #[test]
    fn partition_bookkeeping() {
        let part: Partition = "2,2".parse().unwrap();
        assert_eq!(part.h0_dim(), 6);
        assert_eq!(part.dims_match(), (9, 9));
        assert_eq!("1,1".parse::<Partition>().unwrap().h0_dim(), 4);
        assert_eq!("2,1,1".parse::<Partition>().unwrap().parts(), &[1, 1, 2]);
        assert_eq!("1,1,2".parse::<Partition>().unwrap().dims_match(), (12, 12));
        assert!("0,2".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert!("1,x".parse::<Partition>().is_err());
        for n in 1..8 {
            let part = Partition::new(vec![n]).unwrap();
            assert_eq!(part.dims_match(), (2 * (n as usize - 1), 2 * n as usize - 2));
        }
    }

    #[test]
    fn surface_example() {
        let part = Partition::new(vec![1, 1]).unwrap();
        let frame = Frame::new(&part, vec![vec![u(&[1]), u(&[])], vec![u(&[]), u(&[1])], vec![u(&[0, 1]), u(&[1, 1])]]).unwrap();
        let want = RamCoeffs::new(vec![u(&[1]), u(&[1])]);
        assert_eq!(ram_determinant(&frame), want);
        assert_eq!(ram_differential(&frame), want);
    }

    #[test]
    fn curve_examples() {
        let part = Partition::new(vec![4]).unwrap();
        let frame = Frame::new(&part, vec![vec![u(&[1])], vec![u(&[0, 0, 0, 0, 1])]]).unwrap();
        assert_eq!(ram_determinant(&frame).polys()[0], u(&[0, 0, 0, 4]));
        assert_eq!(wronskian(&u(&[1]), &u(&[0, 1])), u(&[1]));
        assert_eq!(wronskian(&u(&[0, 1]), &u(&[0, 0, 1])), u(&[0, 0, 1]));
        assert!(wronskian(&u(&[3, 1]), &u(&[3, 1])).is_zero());
    }

    #[test]
    fn repeated_section_gives_zero() {
        let part = Partition::new(vec![1, 2]).unwrap();
        let f = Frame::random(&part, p(), 7, 0);
        let mut rows = f.rows().to_vec();
        rows[2] = rows[0].clone();
        let g = Frame::new(&part, rows).unwrap();
        assert!(ram_determinant(&g).is_zero());
        assert!(ram_differential(&g).is_zero());
    }

    #[test]
    fn threefold_sign() {
        let (zero, one) = (u(&[]), u(&[1]));
        let closed = ram_threefold_closed(&zero, &zero, &zero, &one, 1).unwrap();
        assert_eq!(closed, RamCoeffs::new(vec![one.clone(), zero.clone(), zero.clone()]));
        let frame = threefold_frame(&zero, &zero, &zero, &one, 1).unwrap();
        assert_eq!(ram_determinant(&frame), closed.scale(p().elem(THREEFOLD_SIGN)));
        let closed = ram_threefold_closed(&one, &zero, &zero, &zero, 1).unwrap();
        assert_eq!(closed, RamCoeffs::new(vec![zero.clone(), u(&[0, 1]), zero]));
    }

    #[test]
    fn bounds_and_requirement() {
        for n in 2..10 {
            assert_eq!(kymh_lower_bound(n, 1, 2), 2 * n - 1);
        }
        assert_eq!(kymh_lower_bound(5, 2, 3), 10);
        assert_eq!(kymh_lower_bound(7, 3, 3), 4);
        assert!(requirement_holds(1, 2, 4));
        assert!(!requirement_holds(1, 2, 3));
        assert!((2..7).all(|b| requirement_holds(1, b, 4)));
    }

    #[test]
    fn layout_roundtrip() {
        let part = Partition::new(vec![1, 2]).unwrap();
        let c = ram_determinant(&Frame::random(&part, p(), 3, 0));
        assert_eq!(part.slot_count(), 2 * 3 + 3 - 2);
        let slots = c.to_slots(&part);
        assert_eq!(slots.len(), part.slot_count());
        assert_eq!(RamCoeffs::from_slots(&part, p(), &slots), c);
    }

    #[test]
    fn stabilizers() {
        let p = p();
        let special = Partition::new(vec![1, 1, 1, 2]).unwrap();
        assert!(stabilizer_dim_target(&special, p, 1).unwrap() >= 1);
        assert_eq!(stabilizer_dim_source(&special, p, 1).unwrap(), 0);
        for s in ["1,1", "2,2", "1,1,2"] {
            let part: Partition = s.parse().unwrap();
            assert_eq!(stabilizer_dim_target(&part, p, 1).unwrap(), 0, "{s}");
            assert_eq!(stabilizer_dim_source(&part, p, 1).unwrap(), 0, "{s}");
        }
    }
}
