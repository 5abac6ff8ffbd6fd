use super::{CommRing, MultiPoly};

/// Matrices up to this size use cofactor expansion; larger ones use
/// Berkowitz.
pub const COFACTOR_CUTOFF: usize = 5;

/// Determinant of a square matrix over any commutative ring. Panics on an
/// empty or non-square matrix.
pub fn det<T: CommRing>(m: &[Vec<T>]) -> T {
    check_square(m);
    if m.len() <= COFACTOR_CUTOFF {
        det_cofactor(m)
    } else {
        det_berkowitz(m)
    }
}

/// Determinant of a matrix of multivariate polynomials.
pub fn det_poly_matrix(m: &[Vec<MultiPoly>]) -> MultiPoly {
    det(m)
}

fn check_square<T>(m: &[Vec<T>]) {
    assert!(!m.is_empty(), "determinant of an empty matrix");
    assert!(m.iter().all(|row| row.len() == m.len()), "matrix is not square");
}

/// Laplace expansion along the first row.
pub fn det_cofactor<T: CommRing>(m: &[Vec<T>]) -> T {
    check_square(m);
    let cols: Vec<usize> = (0..m.len()).collect();
    cofactor_rec(m, 0, &cols)
}

fn cofactor_rec<T: CommRing>(m: &[Vec<T>], row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    if cols.len() == 2 {
        let (a, b) = (cols[0], cols[1]);
        return m[row][a].times(&m[row + 1][b]).minus(&m[row][b].times(&m[row + 1][a]));
    }
    let mut acc = m[row][cols[0]].zero_like();
    let mut rest = Vec::with_capacity(cols.len() - 1);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(cols.iter().copied().filter(|&x| x != c));
        let term = m[row][c].times(&cofactor_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

/// Division-free Berkowitz algorithm: builds the characteristic polynomial
/// of each leading principal submatrix in turn. O(n^4) ring operations.
pub fn det_berkowitz<T: CommRing>(m: &[Vec<T>]) -> T {
    check_square(m);
    let n = m.len();
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    // v holds coefficients of det(xI - M_r), highest degree first.
    let mut v = vec![one.clone(), m[0][0].negated()];
    for r in 1..n {
        // Toeplitz column: 1, -a, -R C, -R M C, ..., -R M^{r-1} C
        let mut t = Vec::with_capacity(r + 2);
        t.push(one.clone());
        t.push(m[r][r].negated());
        let mut col: Vec<T> = (0..r).map(|i| m[i][r].clone()).collect();
        for k in 0..r {
            let rc = (0..r).fold(zero.clone(), |acc, j| acc.plus(&m[r][j].times(&col[j])));
            t.push(rc.negated());
            if k + 1 < r {
                col = (0..r)
                    .map(|i| (0..r).fold(zero.clone(), |acc, j| acc.plus(&m[i][j].times(&col[j]))))
                    .collect();
            }
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = zero.clone();
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                acc = acc.plus(&t[i - j].times(vj));
            }
            next.push(acc);
        }
        v = next;
    }
    let last = v.pop().expect("nonempty");
    if n % 2 == 0 {
        last
    } else {
        last.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{Fp, Prime};
    use crate::poly::{PolyRing, UniPoly};
    use proptest::prelude::*;

    fn leibniz(m: &[Vec<Fp>]) -> Fp {
        let n = m.len();
        let p = m[0][0].prime();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = p.zero();
        permute(&mut perm, 0, &mut |perm| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let prod = (0..n).fold(p.one(), |acc, i| acc * m[i][perm[i]]);
            total = if inversions % 2 == 0 { total + prod } else { total - prod };
        });
        total
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Fp>>> {
        let p = Prime::new(32003).unwrap();
        prop::collection::vec(prop::collection::vec(0u32..32003, n), n)
            .prop_map(move |rows| rows.into_iter().map(|r| r.into_iter().map(|x| Fp::new(x as i64, p)).collect()).collect())
    }

    #[test]
    fn two_by_two_over_polynomials() {
        let r = PolyRing::new(&["t"], Prime::new(32003).unwrap()).unwrap();
        let t = MultiPoly::var(&r, 0);
        let one = MultiPoly::one(&r);
        let m = vec![vec![t.clone(), one.clone()], vec![one, t]];
        assert_eq!(det_poly_matrix(&m), MultiPoly::parse(&r, "t^2 - 1").unwrap());
    }

    #[test]
    fn berkowitz_over_univariate() {
        let p = Prime::new(7).unwrap();
        let t = UniPoly::new(p, &[0, 1]);
        let c = |x| UniPoly::new(p, &[x]);
        let m = vec![
            vec![t.clone(), c(1), c(0)],
            vec![c(0), t.clone(), c(1)],
            vec![c(1), c(0), t.clone()],
        ];
        // t^3 + 1
        assert_eq!(det_berkowitz(&m), UniPoly::new(p, &[1, 0, 0, 1]));
        assert_eq!(det_cofactor(&m), det_berkowitz(&m));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn both_methods_match_leibniz(n in 1usize..7, seed in prop::collection::vec(0u32..32003, 36)) {
            let p = Prime::new(32003).unwrap();
            let m: Vec<Vec<Fp>> = (0..n).map(|i| (0..n).map(|j| Fp::new(seed[i * 6 + j] as i64, p)).collect()).collect();
            let want = leibniz(&m);
            prop_assert_eq!(det_berkowitz(&m), want);
            prop_assert_eq!(det_cofactor(&m), want);
            prop_assert_eq!(det(&m), want);
        }

        #[test]
        fn multilinear_in_rows(m in arb_matrix(6), row in prop::collection::vec(0u32..32003, 6), k in 0usize..6, s in 1u32..32003) {
            let p = Prime::new(32003).unwrap();
            let s = Fp::new(s as i64, p);
            let extra: Vec<Fp> = row.into_iter().map(|x| Fp::new(x as i64, p)).collect();
            let mut summed = m.clone();
            let mut other = m.clone();
            for j in 0..6 {
                summed[k][j] = m[k][j] * s + extra[j];
                other[k][j] = extra[j];
            }
            prop_assert_eq!(det(&summed), det(&m) * s + det(&other));
        }
    }
}
