//! The non-scroll geometries of minimal degree: quadric polarity, nets of
//! conics and their Jacobian cubics, and the triangle map `mu` for
//! pencils of lines on a smooth conic.

use std::sync::Arc;

use rand::Rng;

use crate::error::GeometryError;
use crate::ff::{Fp, Prime};
use crate::linalg::{self, Matrix};
use crate::poly::{det, Monomial, MultiPoly, PolyRing};
use crate::rng::{random_elem, random_vec};

/// Exponents `(i, j, k)` of `x^i y^j z^k` for the given degree, in
/// graded-lex order (`x^n, x^{n-1} y, x^{n-1} z, ..., z^n`).
pub fn ternary_monomials(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

/// Homogeneous form in `x, y, z` stored as a coefficient vector over
/// [`ternary_monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    degree: u32,
    p: Prime,
    coeffs: Vec<u32>,
}

impl TernaryForm {
    pub fn new(degree: u32, p: Prime, coeffs: Vec<u32>) -> Result<TernaryForm, GeometryError> {
        let want = ((degree + 1) * (degree + 2) / 2) as usize;
        if coeffs.len() != want {
            return Err(GeometryError::FrameShape(format!(
                "a degree-{degree} ternary form has {want} coefficients, got {}",
                coeffs.len()
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| c % p.get()).collect();
        Ok(TernaryForm { degree, p, coeffs })
    }

    pub fn random<R: Rng>(degree: u32, p: Prime, rng: &mut R) -> TernaryForm {
        let n = ((degree + 1) * (degree + 2) / 2) as usize;
        TernaryForm { degree, p, coeffs: random_vec(rng, p, n) }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Embeds into `ring`, sending `x, y, z` to variables `xyz`.
    pub fn to_poly(&self, ring: &Arc<PolyRing>, xyz: [usize; 3]) -> MultiPoly {
        let n = ring.nvars();
        let terms = ternary_monomials(self.degree).into_iter().zip(&self.coeffs).map(|(e, &c)| {
            let mut exps = vec![0u32; n];
            for (v, &ev) in xyz.iter().zip(&e) {
                exps[*v] += ev;
            }
            (Monomial::from_exps(&exps).expect("small exponents"), c)
        });
        MultiPoly::from_terms(ring, terms.collect::<Vec<_>>())
    }

    /// Inverse of [`TernaryForm::to_poly`]; the polynomial must be a form of
    /// the given degree in `xyz` alone.
    pub fn from_poly(f: &MultiPoly, degree: u32, xyz: [usize; 3]) -> Result<TernaryForm, GeometryError> {
        let mons = ternary_monomials(degree);
        let mut coeffs = vec![0u32; mons.len()];
        for (m, c) in f.terms() {
            let e = [m.exp(xyz[0]), m.exp(xyz[1]), m.exp(xyz[2])];
            if m.degree() != degree || e.iter().sum::<u32>() != degree {
                return Err(GeometryError::Degenerate(format!("{f} is not a ternary form of degree {degree}")));
            }
            let k = mons.iter().position(|x| *x == e).expect("listed monomial");
            coeffs[k] = *c;
        }
        TernaryForm::new(degree, f.prime(), coeffs)
    }

    pub fn eval(&self, pt: [Fp; 3]) -> Fp {
        ternary_monomials(self.degree).into_iter().zip(&self.coeffs).fold(self.p.zero(), |acc, (e, &c)| {
            acc + Fp::new(c as i64, self.p) * pt[0].pow(e[0] as u64) * pt[1].pow(e[1] as u64) * pt[2].pow(e[2] as u64)
        })
    }

    fn ring(p: Prime) -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], p).expect("three variables")
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let ring = TernaryForm::ring(self.p);
        let prod = self.to_poly(&ring, [0, 1, 2]).mul(&other.to_poly(&ring, [0, 1, 2]));
        TernaryForm::from_poly(&prod, self.degree + other.degree, [0, 1, 2]).expect("product of forms")
    }

    /// `f(g x)` for a linear change of coordinates `g` (3 x 3).
    pub fn substitute_linear(&self, g: &Matrix) -> TernaryForm {
        let ring = TernaryForm::ring(self.p);
        let lin: Vec<MultiPoly> = g
            .iter()
            .map(|row| TernaryForm { degree: 1, p: self.p, coeffs: row.clone() }.to_poly(&ring, [0, 1, 2]))
            .collect();
        let mut acc = MultiPoly::zero(&ring);
        for (e, &c) in ternary_monomials(self.degree).into_iter().zip(&self.coeffs) {
            let term = lin[0].pow(e[0]).mul(&lin[1].pow(e[1])).mul(&lin[2].pow(e[2]));
            acc = acc.add(&term.scale(Fp::new(c as i64, self.p)));
        }
        TernaryForm::from_poly(&acc, self.degree, [0, 1, 2]).expect("linear substitution preserves degree")
    }
}

/// `det(d q_i / d x_j)` for three polynomials of a common ring, `xyz`
/// naming the variables to differentiate by.
pub fn jacobian_det(qs: &[MultiPoly; 3], xyz: [usize; 3]) -> MultiPoly {
    let m: Vec<Vec<MultiPoly>> = qs.iter().map(|q| xyz.iter().map(|&v| q.partial(v)).collect()).collect();
    det(&m)
}

/// Jacobian cubic of the net spanned by three ternary quadrics.
pub fn jacobian_cubic(q1: &TernaryForm, q2: &TernaryForm, q3: &TernaryForm) -> Result<TernaryForm, GeometryError> {
    for q in [q1, q2, q3] {
        if q.degree != 2 {
            return Err(GeometryError::FrameShape("a net of conics needs three quadrics".into()));
        }
    }
    let ring = TernaryForm::ring(q1.p);
    let qs = [q1.to_poly(&ring, [0, 1, 2]), q2.to_poly(&ring, [0, 1, 2]), q3.to_poly(&ring, [0, 1, 2])];
    TernaryForm::from_poly(&jacobian_det(&qs, [0, 1, 2]), 3, [0, 1, 2])
}

fn check_nondegenerate(p: Prime, q: &Matrix) -> Result<(), GeometryError> {
    let n = q.len();
    if q.iter().any(|row| row.len() != n) {
        return Err(GeometryError::FrameShape("quadric matrix is not square".into()));
    }
    if (0..n).any(|i| (0..n).any(|j| q[i][j] != q[j][i])) {
        return Err(GeometryError::FrameShape("quadric matrix is not symmetric".into()));
    }
    if linalg::rank(p, q) < n {
        return Err(GeometryError::Degenerate("quadric is singular".into()));
    }
    Ok(())
}

/// Polar hyperplane of `pt` with respect to the quadric with symmetric
/// matrix `q` (the gradient up to the factor 2).
pub fn quadric_polarity(p: Prime, q: &Matrix, pt: &[u32]) -> Result<Vec<u32>, GeometryError> {
    check_nondegenerate(p, q)?;
    if pt.len() != q.len() {
        return Err(GeometryError::FrameShape(format!("point has {} coordinates", pt.len())));
    }
    Ok(linalg::mat_vec(p, q, pt))
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize(p: Prime, v: &[u32]) -> Vec<u32> {
    match v.iter().find(|&&x| x != 0) {
        Some(&lead) => {
            let inv = p.inv(lead).expect("nonzero");
            v.iter().map(|&x| p.mul(x, inv)).collect()
        }
        None => v.to_vec(),
    }
}

pub fn cross(p: Prime, a: &[u32], b: &[u32]) -> [u32; 3] {
    let m = |i: usize, j: usize| p.sub(p.mul(a[i], b[j]), p.mul(a[j], b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn dot(p: Prime, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| p.add(acc, p.mul(x, y)))
}

/// A smooth conic `x^T Q x = 0` with a fixed rational parametrization
/// `s -> X0 + s X1 + s^2 X2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    p: Prime,
    q: Matrix,
    param: [[u32; 3]; 3],
}

impl Conic {
    /// Finds a rational point by random search and parametrizes the conic
    /// by projecting from it. Deterministic in `seed`.
    pub fn new<R: Rng>(p: Prime, q: Matrix, rng: &mut R) -> Result<Conic, GeometryError> {
        check_nondegenerate(p, &q)?;
        if q.len() != 3 {
            return Err(GeometryError::FrameShape("a conic needs a 3 x 3 matrix".into()));
        }
        let form = |v: &[u32]| dot(p, v, &linalg::mat_vec(p, &q, v));
        let bilinear = |a: &[u32], b: &[u32]| dot(p, a, &linalg::mat_vec(p, &q, b));
        let point = (0..200)
            .find_map(|_| find_point(p, &q, rng))
            .ok_or_else(|| GeometryError::Degenerate("no rational point found on the conic".into()))?;
        debug_assert_eq!(form(&point), 0);
        // D(s) = D0 + s D1 spans a complement of the point.
        let (d0, d1) = loop {
            let d0 = random_vec(rng, p, 3);
            let d1 = random_vec(rng, p, 3);
            if linalg::rank(p, &vec![point.to_vec(), d0.clone(), d1.clone()]) == 3 {
                break (d0, d1);
            }
        };
        // X(s) = q(D) P - 2 B(P, D) D, quadratic in s.
        let two = 2 % p.get();
        let (q00, q01, q11) = (form(&d0), bilinear(&d0, &d1), form(&d1));
        let (b0, b1) = (bilinear(&point, &d0), bilinear(&point, &d1));
        let mut param = [[0u32; 3]; 3];
        for c in 0..3 {
            let x0 = p.sub(p.mul(q00, point[c]), p.mul(p.mul(two, b0), d0[c]));
            let x1 = p.sub(
                p.mul(p.mul(two, q01), point[c]),
                p.mul(two, p.add(p.mul(b0, d1[c]), p.mul(b1, d0[c]))),
            );
            let x2 = p.sub(p.mul(q11, point[c]), p.mul(p.mul(two, b1), d1[c]));
            param[0][c] = x0;
            param[1][c] = x1;
            param[2][c] = x2;
        }
        if linalg::rank(p, &param.iter().map(|r| r.to_vec()).collect()) < 3 {
            return Err(GeometryError::Degenerate("degenerate parametrization".into()));
        }
        Ok(Conic { p, q, param })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn matrix(&self) -> &Matrix {
        &self.q
    }

    /// The point `X(s)`.
    pub fn point_at(&self, s: Fp) -> [u32; 3] {
        let p = self.p;
        let (s, s2) = (s.value(), (s * s).value());
        let mut out = [0u32; 3];
        for (c, o) in out.iter_mut().enumerate() {
            *o = p.add(self.param[0][c], p.add(p.mul(s, self.param[1][c]), p.mul(s2, self.param[2][c])));
        }
        out
    }

    /// `q(x)` as a quadratic ternary form.
    pub fn form(&self) -> TernaryForm {
        let p = self.p;
        let q = &self.q;
        let two = |x: u32| p.add(x, x);
        let coeffs = vec![q[0][0], two(q[0][1]), two(q[0][2]), q[1][1], two(q[1][2]), q[2][2]];
        TernaryForm::new(2, p, coeffs).expect("six coefficients")
    }

    /// Coefficients `(l(X0), l(X1), l(X2))` of the pullback of a line.
    fn pullback(&self, l: &[u32]) -> [u32; 3] {
        [dot(self.p, l, &self.param[0]), dot(self.p, l, &self.param[1]), dot(self.p, l, &self.param[2])]
    }
}

fn find_point<R: Rng>(p: Prime, q: &Matrix, rng: &mut R) -> Option<[u32; 3]> {
    // Fix x, y at random and solve q(x, y, z) = 0 for z.
    let (x, y) = (random_elem(rng, p), random_elem(rng, p));
    let f = |v: u32| Fp::new(v as i64, p);
    let a = f(q[2][2]);
    let b = f(2) * (f(q[0][2]) * x + f(q[1][2]) * y);
    let c = f(q[0][0]) * x * x + f(2) * f(q[0][1]) * x * y + f(q[1][1]) * y * y;
    let z = if a.is_zero() {
        if b.is_zero() {
            return None;
        }
        -c / b
    } else {
        let disc = b * b - f(4) * a * c;
        let root = disc.sqrt()?;
        (root - b) / (f(2) * a)
    };
    let pt = [x.value(), y.value(), z.value()];
    (pt != [0, 0, 0]).then_some(pt)
}

/// The line `R` cutting the ramification divisor of the pencil spanned by
/// `li`, `lj` restricted to the conic: the Wronskian of the two pulled-back
/// binary quadratics, pushed back to a line. Normalized to a leading 1.
pub fn ram_line_of_pencil(li: &[u32], lj: &[u32], conic: &Conic) -> Result<Vec<u32>, GeometryError> {
    let p = conic.p;
    let f = conic.pullback(li);
    let g = conic.pullback(lj);
    // f g' - f' g for f = f0 + f1 s + f2 s^2; the s^3 terms cancel.
    let w0 = p.sub(p.mul(f[0], g[1]), p.mul(f[1], g[0]));
    let w1 = p.mul(2 % p.get(), p.sub(p.mul(f[0], g[2]), p.mul(f[2], g[0])));
    let w2 = p.sub(p.mul(f[1], g[2]), p.mul(f[2], g[1]));
    if [w0, w1, w2] == [0, 0, 0] {
        return Err(GeometryError::Degenerate("the two lines span no pencil".into()));
    }
    let m: Matrix = conic.param.iter().map(|r| r.to_vec()).collect();
    let line = linalg::solve(p, &m, &[w0, w1, w2])
        .ok_or_else(|| GeometryError::Degenerate("parametrization is not invertible".into()))?;
    Ok(normalize(p, &line))
}

/// Triangle whose lines are the polars of the opposite vertices:
/// `M_i = Q (L_j x L_k)`, each normalized to a leading 1.
pub fn polar_conjugate(p: Prime, q: &Matrix, lines: [&[u32]; 3]) -> Result<[Vec<u32>; 3], GeometryError> {
    check_nondegenerate(p, q)?;
    let vertex = |j: usize, k: usize| {
        let v = cross(p, lines[j], lines[k]);
        if v == [0, 0, 0] {
            Err(GeometryError::Degenerate(format!("lines {j} and {k} coincide")))
        } else {
            Ok(v)
        }
    };
    let polar = |v: [u32; 3]| normalize(p, &linalg::mat_vec(p, q, &v));
    Ok([polar(vertex(1, 2)?), polar(vertex(0, 2)?), polar(vertex(0, 1)?)])
}

/// Image of `span(L1 R23, L2 R13, L3 R12)` in `Sym^2 / <q>`: a
/// 2-dimensional subspace of the 5-dimensional quotient, returned as a
/// reduced row echelon basis.
pub fn mu_triangle(lines: [&[u32]; 3], conic: &Conic) -> Result<Vec<Vec<u32>>, GeometryError> {
    let p = conic.p;
    let r23 = ram_line_of_pencil(lines[1], lines[2], conic)?;
    let r13 = ram_line_of_pencil(lines[0], lines[2], conic)?;
    let r12 = ram_line_of_pencil(lines[0], lines[1], conic)?;
    let lin = |v: &[u32]| TernaryForm::new(1, p, v.to_vec());
    let products: Vec<Vec<u32>> = [(lines[0], &r23), (lines[1], &r13), (lines[2], &r12)]
        .into_iter()
        .map(|(l, r)| Ok(lin(l)?.mul(&lin(r)?).coeffs))
        .collect::<Result<_, GeometryError>>()?;
    let q = conic.form().coeffs;
    let mut with_q = products.clone();
    with_q.push(q.clone());
    if linalg::rank(p, &products) != 3 || linalg::rank(p, &with_q) != 3 {
        return Err(GeometryError::Degenerate("products do not span a 3-space through q".into()));
    }
    let k = q.iter().position(|&x| x != 0).expect("q is nonzero");
    let qk_inv = p.inv(q[k]).expect("nonzero");
    let mut image: Matrix = products
        .iter()
        .map(|v| {
            let f = p.mul(v[k], qk_inv);
            (0..6).filter(|&i| i != k).map(|i| p.sub(v[i], p.mul(f, q[i]))).collect()
        })
        .collect();
    let pivots = linalg::rref(p, &mut image);
    if pivots.len() != 2 {
        return Err(GeometryError::Degenerate(format!("image has dimension {}", pivots.len())));
    }
    image.truncate(2);
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_for;

    fn p() -> Prime {
        Prime::new(32003).unwrap()
    }

    fn form(deg: u32, c: &[u32]) -> TernaryForm {
        TernaryForm::new(deg, p(), c.to_vec()).unwrap()
    }

    #[test]
    fn monomial_layout() {
        assert_eq!(ternary_monomials(2), vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]);
        assert_eq!(ternary_monomials(3).len(), 10);
        assert_eq!(ternary_monomials(3)[4], [1, 1, 1]);
    }

    #[test]
    fn jacobian_of_diagonal_net() {
        let (x2, y2, z2) = (form(2, &[1, 0, 0, 0, 0, 0]), form(2, &[0, 0, 0, 1, 0, 0]), form(2, &[0, 0, 0, 0, 0, 1]));
        let j = jacobian_cubic(&x2, &y2, &z2).unwrap();
        assert_eq!(j.coeffs(), &[0, 0, 0, 0, 8, 0, 0, 0, 0, 0]);
        let mut rng = rng_for(3, 0);
        let (a, b) = (TernaryForm::random(2, p(), &mut rng), TernaryForm::random(2, p(), &mut rng));
        let sum = TernaryForm::new(2, p(), a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| p().add(*x, *y)).collect()).unwrap();
        assert!(jacobian_cubic(&a, &b, &sum).unwrap().is_zero());
    }

    #[test]
    fn polarity_examples() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(quadric_polarity(p(), &id, &[1, 0, 0]).unwrap(), vec![1, 0, 0]);
        let diag = vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]];
        assert_eq!(quadric_polarity(p(), &diag, &[1, 1, 1]).unwrap(), vec![1, 2, 3]);
        let singular = vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]];
        assert!(quadric_polarity(p(), &singular, &[1, 1, 1]).is_err());
    }

    #[test]
    fn standard_conic_pencil() {
        // xz - y^2
        let q = vec![vec![0, 0, 16002], vec![0, 32002, 0], vec![16002, 0, 0]];
        let conic = Conic::new(p(), q, &mut rng_for(1, 0)).unwrap();
        let line = ram_line_of_pencil(&[1, 0, 0], &[0, 0, 1], &conic).unwrap();
        assert_eq!(line, vec![0, 1, 0]);
        let swapped = ram_line_of_pencil(&[0, 0, 1], &[1, 0, 0], &conic).unwrap();
        assert_eq!(swapped, line);
        assert!(ram_line_of_pencil(&[1, 2, 3], &[1, 2, 3], &conic).is_err());
    }

    #[test]
    fn self_polar_triangle() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let (x, y, z) = ([1, 0, 0], [0, 1, 0], [0, 0, 1]);
        let conj = polar_conjugate(p(), &id, [&x, &y, &z]).unwrap();
        assert_eq!(conj, [x.to_vec(), y.to_vec(), z.to_vec()]);
    }
}
