//! Schubert calculus on `Gr(k, n)` restricted to multiplication by `σ1`
//! (the Pieri rule), enough to get the Plücker degree.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Partition in the `k x (n-k)` box, weakly decreasing, no trailing zeros.
pub type Shape = Vec<u32>;

/// Integer combination of Schubert classes `σ_λ` of `Gr(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCycle {
    k: usize,
    n: usize,
    coeffs: BTreeMap<Shape, BigUint>,
}

impl SchubertCycle {
    /// The fundamental class `σ_∅`.
    pub fn point_dual(k: usize, n: usize) -> SchubertCycle {
        assert!(1 <= k && k < n, "need 1 <= k < n");
        SchubertCycle { k, n, coeffs: BTreeMap::from([(Vec::new(), BigUint::one())]) }
    }

    /// A single class `σ_λ`; `None` if `λ` is not a partition in the box.
    pub fn class(k: usize, n: usize, shape: &[u32]) -> Option<SchubertCycle> {
        let mut shape = shape.to_vec();
        while shape.last() == Some(&0) {
            shape.pop();
        }
        let fits = shape.len() <= k
            && shape.windows(2).all(|w| w[0] >= w[1])
            && shape.first().is_none_or(|&c| c as usize <= n - k);
        fits.then(|| SchubertCycle { k, n, coeffs: BTreeMap::from([(shape, BigUint::one())]) })
    }

    pub fn coefficients(&self) -> &BTreeMap<Shape, BigUint> {
        &self.coeffs
    }

    pub fn coefficient(&self, shape: &[u32]) -> BigUint {
        self.coeffs.get(shape).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigUint {
        self.coeffs.values().sum()
    }
}

/// Shapes obtained from `shape` by adding one box inside the `k x w` box.
fn addable(shape: &[u32], k: usize, w: u32) -> Vec<Shape> {
    (0..k.min(shape.len() + 1))
        .filter(|&i| {
            let cur = shape.get(i).copied().unwrap_or(0);
            let above = if i == 0 { w } else { shape[i - 1] };
            cur < w && cur < above
        })
        .map(|i| {
            let mut s = shape.to_vec();
            if i == s.len() {
                s.push(1);
            } else {
                s[i] += 1;
            }
            s
        })
        .collect()
}

/// Multiplication by `σ1`.
pub fn pieri_sigma1(c: &SchubertCycle) -> SchubertCycle {
    let w = (c.n - c.k) as u32;
    let mut out: BTreeMap<Shape, BigUint> = BTreeMap::new();
    for (shape, coeff) in &c.coeffs {
        for s in addable(shape, c.k, w) {
            *out.entry(s).or_insert_with(BigUint::zero) += coeff;
        }
    }
    SchubertCycle { k: c.k, n: c.n, coeffs: out }
}

/// Degree of `Gr(k, n)` in its Plücker embedding: `σ1^{k(n-k)}`.
pub fn plucker_degree(k: usize, n: usize) -> BigUint {
    let mut c = SchubertCycle::point_dual(k, n);
    for _ in 0..k * (n - k) {
        c = pieri_sigma1(&c);
    }
    c.coefficient(&vec![(n - k) as u32; k])
}
