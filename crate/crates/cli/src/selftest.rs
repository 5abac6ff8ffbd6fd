//! A few-second pass over the invariant suites, for checking a build.

use ramify::groebner::{buchberger, Ideal};
use ramify::poly::{MultiPoly, PolyRing, UniPoly};
use ramify::rng::{random_matrix, random_vec, rng_for};
use ramify::scroll::{
    ram_determinant, ram_differential, ram_threefold_closed, stabilizer_dim_source, stabilizer_dim_target,
    threefold_frame, Frame, THREEFOLD_SIGN,
};
use ramify::special::{mu_triangle, polar_conjugate, Conic};
use ramify::variation::dual_number_consistency;
use ramify::{phi, plucker_degree, veronese_degree, Budget, DegreeConfig, Partition, Prime};
use serde::Serialize;

#[derive(Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn p() -> Prime {
    Prime::new(32003).expect("prime")
}

fn part(s: &str) -> Partition {
    s.parse().expect("valid partition")
}

fn oracle_equality() -> (bool, String) {
    let mut n = 0;
    for s in ["1,1", "2,2", "2,3", "1,1,2", "2,2,2", "1,1,1,2"] {
        for seed in 0..20 {
            let f = Frame::random(&part(s), p(), seed, 0);
            if ram_determinant(&f) != ram_differential(&f) {
                return (false, format!("mismatch on ({s}), seed {seed}"));
            }
            n += 1;
        }
    }
    (true, format!("{n} frames"))
}

fn threefold() -> (bool, String) {
    let sign = p().elem(THREEFOLD_SIGN);
    for k in 0..=2u32 {
        for seed in 0..20u64 {
            let [a, b, c, d] = [1, 2, 3, 4]
                .map(|s| UniPoly::from_raw(p(), random_vec(&mut rng_for(seed, 10 * k as u64 + s), p(), k as usize + 2)));
            let frame = threefold_frame(&a, &b, &c, &d, k).expect("degree bounds hold");
            let closed = ram_threefold_closed(&a, &b, &c, &d, k).expect("degree bounds hold");
            if ram_determinant(&frame) != closed.scale(sign) {
                return (false, format!("k = {k}, seed {seed}"));
            }
        }
    }
    (true, "60 inputs, k = 0, 1, 2".into())
}

fn bezout() -> (bool, String) {
    let ring = PolyRing::new(&["x", "y"], p()).expect("ring");
    let count = |gens: [&str; 2]| {
        let gens = gens.map(|g| MultiPoly::parse(&ring, g).expect("parses")).to_vec();
        buchberger(&Ideal::new(&ring, gens).expect("ideal"), &Budget::default())
            .ok()
            .and_then(|g| g.quotient_dimension().ok())
    };
    let got = (count(["x^2", "y^2"]), count(["x^2 - 1", "y^3 - y"]));
    (got == (Some(4), Some(6)), format!("{got:?}"))
}

fn catalan() -> (bool, String) {
    let expected = [1u32, 2, 5, 14, 42, 132, 429];
    let ok = (2..=8).zip(expected).all(|(n, c)| plucker_degree(2, n + 1) == c.into());
    (ok, "Gr(2, n+1), n = 2..8".into())
}

fn dual_numbers() -> (bool, String) {
    for s in ["1,1", "1,2", "1,1,2"] {
        if !dual_number_consistency(&part(s), p(), 1).unwrap_or(false) {
            return (false, format!("({s})"));
        }
    }
    (true, "(1,1), (1,2), (1,1,2)".into())
}

fn mu_conjugacy() -> (bool, String) {
    let pr = p();
    let mut checked = 0;
    for seed in 0..40u64 {
        let mut rng = rng_for(seed, 0);
        let a = random_matrix(&mut rng, pr, 3, 3);
        let q: Vec<Vec<u32>> = (0..3).map(|i| (0..3).map(|j| pr.add(a[i][j], a[j][i])).collect()).collect();
        let Ok(conic) = Conic::new(pr, q.clone(), &mut rng) else { continue };
        let lines: Vec<Vec<u32>> = (0..3).map(|_| random_vec(&mut rng, pr, 3)).collect();
        let tri = [lines[0].as_slice(), &lines[1], &lines[2]];
        let Ok(conj) = polar_conjugate(pr, &q, tri) else { continue };
        if let (Ok(x), Ok(y)) = (mu_triangle(tri, &conic), mu_triangle([&conj[0], &conj[1], &conj[2]], &conic)) {
            if x != y {
                return (false, format!("seed {seed}"));
            }
            checked += 1;
        }
    }
    (checked >= 20, format!("{checked} triangles"))
}

fn degrees() -> (bool, String) {
    let cfg = DegreeConfig::default();
    let got = [
        phi(&part("2,2"), &cfg).ok().and_then(|r| r.degree),
        phi(&part("4"), &cfg).ok().and_then(|r| r.degree),
        veronese_degree(&cfg).ok().and_then(|r| r.degree),
    ];
    (got == [Some(2), Some(5), Some(3)], format!("phi(2,2), phi(4), Veronese = {got:?}"))
}

fn stabilizers() -> (bool, String) {
    let target = stabilizer_dim_target(&part("1,1,1,2"), p(), 1);
    let source = stabilizer_dim_source(&part("1,1,1,2"), p(), 1);
    let small = stabilizer_dim_target(&part("1,1,2"), p(), 1);
    let ok = matches!(target, Ok(t) if t >= 1) && source == Ok(0) && small == Ok(0);
    (ok, format!("(1,1,1,2): target {target:?}, source {source:?}; (1,1,2): target {small:?}"))
}

pub fn run() -> Vec<SuiteResult> {
    let suites: [(&str, fn() -> (bool, String)); 8] = [
        ("determinant = differential", oracle_equality),
        ("threefold closed form", threefold),
        ("Bézout counts", bezout),
        ("Catalan via Pieri", catalan),
        ("dual numbers = symbolic partials", dual_numbers),
        ("mu-conjugacy", mu_conjugacy),
        ("small degrees", degrees),
        ("stabilizers", stabilizers),
    ];
    suites
        .into_iter()
        .map(|(name, f)| {
            let (pass, detail) = f();
            SuiteResult { name: name.into(), pass, detail }
        })
        .collect()
}
