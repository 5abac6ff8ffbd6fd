use std::sync::atomic::{AtomicUsize, Ordering};

use ramify::degree::*;
use ramify::groebner::{buchberger, Budget};
use ramify::scroll::Partition;
use ramify::schubert::plucker_degree;
use ramify::{Error, Prime};

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Returns canned outcomes keyed by prime and seed.
struct Mock<F: Fn(u32, u64) -> (Option<u64>, bool) + Sync>(F);

impl<F: Fn(u32, u64) -> (Option<u64>, bool) + Sync> TrialRunner for Mock<F> {
    fn run(&self, p: Prime, seed: u64, _: &DegreeConfig) -> Result<TrialRecord, Error> {
        let (value, budget_exhausted) = (self.0)(p.get(), seed);
        Ok(TrialRecord { prime: p.get(), seed, value, zero_dim: value.is_some(), ms: 0, budget_exhausted })
    }
}

#[test]
fn consensus_rules() {
    let cfg = DegreeConfig::default();
    let agree = consensus(&Mock(|_, _| (Some(6), false)), vec![2, 3], &cfg).unwrap();
    assert_eq!((agree.degree, agree.agreement, agree.trials.len()), (Some(6), true, 6));

    let split = consensus(&Mock(|p, _| (Some(if p == 32003 { 6 } else { 5 }), false)), vec![2, 3], &cfg).unwrap();
    assert_eq!((split.degree, split.agreement), (None, false));

    let none = consensus(&Mock(|_, _| (None, false)), vec![1, 1, 1, 2], &cfg).unwrap();
    assert_eq!((none.degree, none.agreement), (Some(0), true));

    let mixed = consensus(&Mock(|_, s| (if s == 2 { None } else { Some(1) }, false)), vec![2], &cfg).unwrap();
    assert_eq!((mixed.degree, mixed.agreement), (None, false));

    let budget = consensus(&Mock(|_, s| (if s == 3 { None } else { Some(2) }, s == 3)), vec![2, 2], &cfg).unwrap();
    assert_eq!((budget.degree, budget.agreement), (None, false));
    assert!(budget.budget_exhausted());

    let one_prime = DegreeConfig { primes: vec![Prime::new(32003).unwrap()], ..cfg.clone() };
    let single = consensus(&Mock(|_, _| (Some(2), false)), vec![2, 2], &one_prime).unwrap();
    assert_eq!((single.degree, single.agreement), (None, false));

    let few = DegreeConfig { trials: 1, ..cfg };
    let short = consensus(&Mock(|_, _| (Some(2), false)), vec![2, 2], &few).unwrap();
    assert_eq!((short.degree, short.agreement), (None, false));
}

#[test]
fn schedule_is_seed_plus_k_per_prime() {
    let calls = AtomicUsize::new(0);
    let cfg = DegreeConfig { seed: 40, ..DegreeConfig::default() };
    let report = consensus(
        &Mock(|_, _| {
            calls.fetch_add(1, Ordering::Relaxed);
            (Some(1), false)
        }),
        vec![1, 1],
        &cfg,
    )
    .unwrap();
    assert_eq!(calls.load(Ordering::Relaxed), 6);
    let seeds: Vec<(u32, u64)> = report.trials.iter().map(|t| (t.prime, t.seed)).collect();
    assert_eq!(seeds, vec![(32003, 40), (32003, 41), (32003, 42), (1000003, 40), (1000003, 41), (1000003, 42)]);
}

#[test]
fn small_degrees() {
    let cfg = DegreeConfig::default();
    for (s, expected) in [("1,1", 1), ("1,2", 1), ("1,3", 1), ("2,2", 2)] {
        let report = phi(&part(s), &cfg).unwrap();
        assert_eq!(report.degree, Some(expected), "{s}");
        assert!(report.agreement);
    }
}

#[test]
fn curves_give_catalan_numbers() {
    let cfg = DegreeConfig::default();
    for n in 2..=5u32 {
        let report = phi(&Partition::new(vec![n]).unwrap(), &cfg).unwrap();
        let catalan = plucker_degree(2, n as usize + 1);
        assert_eq!(report.degree.map(num_bigint::BigUint::from), Some(catalan), "n = {n}");
    }
}

#[test]
fn chart_kind_does_not_change_the_count() {
    let dense = DegreeConfig { chart: ChartKind::Dense, trials: 1, ..DegreeConfig::default() };
    for s in ["2,2", "1,3", "4", "1,1,1"] {
        let a = build_fiber_ideal(&part(s), Prime::new(32003).unwrap(), 3, ChartKind::Dense).unwrap();
        let b = build_fiber_ideal(&part(s), Prime::new(32003).unwrap(), 3, ChartKind::Monomial).unwrap();
        let count = |spec: &FiberIdealSpec| buchberger(&spec.ideal, &Budget::default()).unwrap().quotient_dimension().unwrap();
        assert_eq!(count(&a), count(&b), "{s}");
    }
    let mono = DegreeConfig { chart: ChartKind::Monomial, ..dense.clone() };
    assert_eq!(veronese_degree(&dense).unwrap().trials[0].value, veronese_degree(&mono).unwrap().trials[0].value);
}

#[test]
fn veronese_degree_is_three() {
    let report = veronese_degree(&DegreeConfig::default()).unwrap();
    assert_eq!(report.degree, Some(3));
    assert_eq!(report.geometry.as_deref(), Some("veronese"));
}

#[test]
fn reports_replay_exactly() {
    let cfg = DegreeConfig { seed: 9, ..DegreeConfig::default() };
    let a = phi(&part("2,2"), &cfg).unwrap().without_timing();
    let b = phi(&part("2,2"), &cfg).unwrap().without_timing();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let back: DegreeReport = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(back, a);
}

#[test]
fn brute_force_is_a_lower_bound() {
    // Over F_q only rational fiber points are seen, so for a generic base
    // point the count never exceeds the degree, and the base point itself
    // is always found. Tiny fields make non-generic draws likely, hence
    // q = 31 where the chart is small enough.
    for (s, deg, q) in [("1,1", 1, 31), ("2", 1, 31), ("3", 2, 31), ("4", 5, 11)] {
        for seed in 1..4 {
            let count = brute_force_fiber_count(&part(s), q, seed).unwrap();
            assert!((1..=deg).contains(&count), "{s} seed {seed}: {count}");
        }
    }
    assert!(brute_force_fiber_count(&part("2,3"), 101, 1).is_err());
}

#[test]
fn monotone_under_dominance() {
    let cfg = DegreeConfig::default();
    let (a, b) = (part("1,3"), part("2,2"));
    let (ra, rb) = (phi(&a, &cfg).unwrap(), phi(&b, &cfg).unwrap());
    assert_eq!(monotonicity_check(&a, &ra, &b, &rb), Some(true));
    assert_eq!(monotonicity_check(&b, &rb, &a, &ra), None);
}

#[test]
fn budget_overrun_is_reported_not_raised() {
    let cfg = DegreeConfig { budget: Budget { max_steps: 10, ..Budget::default() }, ..DegreeConfig::default() };
    let report = phi(&part("2,3"), &cfg).unwrap();
    assert!(report.budget_exhausted());
    assert_eq!((report.degree, report.agreement), (None, false));
}
