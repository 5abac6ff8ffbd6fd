//! Dense linear algebra over `F_p` on raw residues.

use crate::ff::Prime;

/// Row-major matrix of canonical residues.
pub type Matrix = Vec<Vec<u32>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(p: Prime, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = p.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = p.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = p.sub(*x, p.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(p: Prime, m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(p, &mut a).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(p: Prime, m: &Matrix, cols: usize) -> Vec<Vec<u32>> {
    let mut a = m.clone();
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let pivots = rref(p, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(a[row][f]);
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, or `None` if inconsistent.
pub fn solve(p: Prime, m: &Matrix, b: &[u32]) -> Option<Vec<u32>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(p, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols];
    }
    Some(x)
}

pub fn mat_vec(p: Prime, m: &Matrix, v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b))))
        .collect()
}

pub fn mat_mul(p: Prime, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| p.add(acc, p.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(p: Prime, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(p, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
