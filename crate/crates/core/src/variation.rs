//! Maximal variation of the projection-ramification map, decided by the
//! rank of its differential at a random point.
//!
//! The differential is computed exactly: the chart point `A0 + εB` is
//! pushed through the ramification determinant over `F_p[t][ε]/(ε^2)`.
//! Since the target is projective, the image of `dρ` is taken modulo the
//! scaling direction `c(A0)`, i.e. `rank [L | c(A0)] - 1`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degree::{ChartKind, ScrollChart};
use crate::error::{Error, GeometryError};
use crate::ff::{Prime, DEFAULT_PRIMES};
use crate::linalg::{self, Matrix};
use crate::poly::{Dual, PolyRing, UniPoly};
use crate::rng::{random_vec, rng_for};
use crate::scroll::{ram_columns, Partition, RamCoeffs};

const MAX_RETRIES: u64 = 5;
const RECERTIFY: usize = 5;

/// A chart point with nonzero ramification, the chart it lives in, and
/// `c(A0)` as a slot vector.
struct BasePoint {
    chart: ScrollChart,
    a0: Vec<u32>,
    r0: Vec<u32>,
}

fn base_point(partition: &Partition, p: Prime, seed: u64) -> Result<BasePoint, GeometryError> {
    let chart = ScrollChart::random(partition, p, seed, ChartKind::Dense);
    let n = chart.nvars();
    (0..=MAX_RETRIES)
        .find_map(|attempt| {
            let a0 = random_vec(&mut rng_for(seed, 2 + attempt), p, n);
            let r0 = chart.ram_slots(&a0);
            r0.iter().any(|&x| x != 0).then_some((a0, r0))
        })
        .map(|(a0, r0)| BasePoint { chart, a0, r0 })
        .ok_or(GeometryError::ImproperRamification(MAX_RETRIES as usize + 1))
}

/// `L(B)`: the ε-part of `c(A0 + εB)`, as a slot vector.
fn directional(bp: &BasePoint, b: &[u32]) -> Vec<u32> {
    let chart = &bp.chart;
    let part = chart.partition();
    let p = chart.prime();
    let re = chart.frame(&bp.a0);
    // The cell coordinates are affine in A, so the ε-part of the frame is
    // coords(B) - coords(0).
    let zero = vec![0u32; b.len()];
    let (cb, c0) = (chart.coords(b), chart.coords(&zero));
    let lin: Vec<Vec<u32>> = cb
        .iter()
        .zip(&c0)
        .map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| p.sub(u, v)).collect())
        .collect();
    let eps_rows: Vec<Vec<UniPoly>> = lin
        .iter()
        .map(|c| {
            (0..part.r())
                .map(|j| {
                    let off = part.section_offset(j);
                    UniPoly::from_raw(p, c[off..off + part.parts()[j] as usize + 1].to_vec())
                })
                .collect()
        })
        .collect();
    let m: Vec<Vec<Dual<UniPoly>>> = re
        .rows()
        .iter()
        .zip(&eps_rows)
        .map(|(r, e)| r.iter().zip(e).map(|(x, y)| Dual::new(x.clone(), y.clone())).collect())
        .collect();
    let dm: Vec<Vec<Dual<UniPoly>>> = m
        .iter()
        .map(|row| row.iter().map(|f| Dual::new(f.re.derivative(), f.eps.derivative())).collect())
        .collect();
    let eps: Vec<UniPoly> = ram_columns(&m, &dm).into_iter().map(|d| d.eps).collect();
    RamCoeffs::new(eps).to_slots(part)
}

fn unit(n: usize, v: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    e[v] = 1;
    e
}

/// Rank of the projectivized differential of ρ at a random chart point.
pub fn jacobian_rank(partition: &Partition, p: Prime, seed: u64) -> Result<usize, Error> {
    let bp = base_point(partition, p, seed)?;
    let n = bp.chart.nvars();
    // Rows are the images of the coordinate directions plus c(A0); rank is
    // transpose invariant.
    let mut rows: Matrix = (0..n).map(|v| directional(&bp, &unit(n, v))).collect();
    rows.push(bp.r0.clone());
    Ok(linalg::rank(p, &rows) - 1)
}

/// Checks `L(B)` from ε-arithmetic against the symbolic partial
/// derivatives of the chart polynomials, for 10 random directions.
pub fn dual_number_consistency(partition: &Partition, p: Prime, seed: u64) -> Result<bool, Error> {
    let bp = base_point(partition, p, seed)?;
    let n = bp.chart.nvars();
    let mut names: Vec<String> = (0..n).map(|v| format!("a{v}")).collect();
    names.push("pad".into());
    let ring: Arc<PolyRing> = PolyRing::new(&names, p)?;
    let slots = bp.chart.symbolic_slots(&ring);
    let mut point: Vec<_> = bp.a0.iter().map(|&x| p.elem(x as i64)).collect();
    point.push(p.zero());
    // jac[m][v] = d c_m / d a_v at A0.
    let jac: Vec<Vec<u32>> = slots
        .iter()
        .map(|c| (0..n).map(|v| c.partial(v).eval(&point).map(|x| x.value())).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let mut rng = rng_for(seed, 90);
    for _ in 0..10 {
        let b = random_vec(&mut rng, p, n);
        let symbolic = linalg::mat_vec(p, &jac, &b);
        if directional(&bp, &b) != symbolic {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTrial {
    pub prime: u32,
    pub seed: u64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub partition: Vec<u32>,
    pub dim_gr: usize,
    /// Largest rank seen over all trials.
    pub rank: usize,
    pub maximal_variation: bool,
    pub trials: Vec<RankTrial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankConfig {
    pub primes: Vec<Prime>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for RankConfig {
    fn default() -> RankConfig {
        RankConfig {
            primes: DEFAULT_PRIMES[..2].iter().map(|&p| Prime::new(p as u64).expect("default prime")).collect(),
            trials: 1,
            seed: 1,
        }
    }
}

fn run_trials(partition: &Partition, schedule: Vec<(Prime, u64)>) -> Result<Vec<RankTrial>, Error> {
    schedule
        .into_par_iter()
        .map(|(p, seed)| {
            let rank = jacobian_rank(partition, p, seed)?;
            Ok(RankTrial { prime: p.get(), seed, rank })
        })
        .collect()
}

/// Decides maximal variation. The rank can only drop at special points,
/// so one full-rank trial settles `true`; a `false` verdict is confirmed
/// by [`RECERTIFY`] further trials per prime before it is reported.
pub fn is_maximal_variation(partition: &Partition, config: &RankConfig) -> Result<RankReport, Error> {
    let dim_gr = (partition.r() + 1) * (partition.d() - 1);
    let schedule = |from: u64, count: usize| -> Vec<(Prime, u64)> {
        config
            .primes
            .iter()
            .flat_map(|&p| (0..count as u64).map(move |k| (p, config.seed.wrapping_add(from + k))))
            .collect()
    };
    let mut trials = run_trials(partition, schedule(0, config.trials))?;
    if trials.iter().all(|t| t.rank < dim_gr) {
        trials.extend(run_trials(partition, schedule(config.trials as u64, RECERTIFY))?);
    }
    let rank = trials.iter().map(|t| t.rank).max().unwrap_or(0);
    Ok(RankReport {
        partition: partition.parts().to_vec(),
        dim_gr,
        rank,
        maximal_variation: rank == dim_gr,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Prime {
        Prime::new(32003).unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn directional_is_linear() {
        let bp = base_point(&part("1,2"), p(), 4).unwrap();
        let n = bp.chart.nvars();
        assert!(directional(&bp, &vec![0; n]).iter().all(|&x| x == 0));
        let b = random_vec(&mut rng_for(3, 0), p(), n);
        let b2: Vec<u32> = b.iter().map(|&x| p().add(x, x)).collect();
        let l: Vec<u32> = directional(&bp, &b).iter().map(|&x| p().add(x, x)).collect();
        assert_eq!(directional(&bp, &b2), l);
    }

    #[test]
    fn dual_numbers_match_symbolic_partials() {
        for s in ["1,1", "3", "1,2", "1,1,2"] {
            assert!(dual_number_consistency(&part(s), p(), 7).unwrap(), "{s}");
        }
    }

    #[test]
    fn second_order_difference_for_curves() {
        // For r = 1 the ramification is a Wronskian, quadratic in A, so
        // D(h) = c(A0 + hB) - c(A0) = hL + h^2 Q and 4 D(1) - D(2) = 2L.
        let pr = p();
        let bp = base_point(&part("3"), pr, 2).unwrap();
        let n = bp.chart.nvars();
        let b = random_vec(&mut rng_for(8, 0), pr, n);
        let shifted = |h: u32| -> Vec<u32> {
            let a: Vec<u32> = bp.a0.iter().zip(&b).map(|(&x, &y)| pr.add(x, pr.mul(h, y))).collect();
            bp.chart.ram_slots(&a).iter().zip(&bp.r0).map(|(&u, &v)| pr.sub(u, v)).collect()
        };
        let (d1, d2) = (shifted(1), shifted(2));
        let inv2 = pr.inv(2).unwrap();
        let l: Vec<u32> = d1.iter().zip(&d2).map(|(&x, &y)| pr.mul(pr.sub(pr.mul(4, x), y), inv2)).collect();
        assert_eq!(directional(&bp, &b), l);
    }

    #[test]
    fn rank_never_exceeds_chart_dimension() {
        for s in ["2", "1,1", "1,3", "1,1,1,2"] {
            let pa = part(s);
            let dim = (pa.r() + 1) * (pa.d() - 1);
            assert!(jacobian_rank(&pa, p(), 3).unwrap() <= dim, "{s}");
        }
    }

    #[test]
    fn verdicts_on_small_cases() {
        let cfg = RankConfig::default();
        assert!(is_maximal_variation(&part("1,1"), &cfg).unwrap().maximal_variation);
        let bad = is_maximal_variation(&part("1,1,1,2"), &cfg).unwrap();
        assert!(!bad.maximal_variation);
        assert_eq!(bad.dim_gr, 20);
        assert_eq!(bad.trials.len(), 2 * (1 + RECERTIFY));
    }
}
