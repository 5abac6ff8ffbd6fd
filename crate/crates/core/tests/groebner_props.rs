use std::sync::Arc;

use proptest::prelude::*;
use ramify::groebner::*;
use ramify::poly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
use ramify::Prime;

fn p() -> Prime {
    Prime::new(32003).unwrap()
}

fn ring3() -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], p()).unwrap()
}

fn parse(ring: &Arc<PolyRing>, s: &str) -> MultiPoly {
    MultiPoly::parse(ring, s).unwrap()
}

fn gb(ring: &Arc<PolyRing>, gens: &[&str]) -> GroebnerBasis {
    let ideal = Ideal::new(ring, gens.iter().map(|s| parse(ring, s)).collect()).unwrap();
    buchberger(&ideal, &Budget::default()).unwrap()
}

/// S-polynomial of two monic-normalized polynomials, built from scratch.
fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (f, g) = (f.monic(), g.monic());
    let (lf, lg) = (*f.leading_monomial().unwrap(), *g.leading_monomial().unwrap());
    let l = lf.lcm(&lg);
    f.mul_term(&lf.quotient_of(&l), 1).sub(&g.mul_term(&lg.quotient_of(&l), 1))
}

/// Canonical text of a reduced basis, independent of element order.
fn canonical(g: &GroebnerBasis) -> Vec<String> {
    let mut v: Vec<String> = g.elements().iter().map(|f| f.to_string()).collect();
    v.sort();
    v
}

#[test]
fn bezout_examples() {
    let r = PolyRing::new(&["x", "y"], p()).unwrap();
    assert_eq!(gb(&r, &["x^2", "y^2"]).quotient_dimension().unwrap(), 4);
    assert_eq!(gb(&r, &["x^2 - 1", "y^3 - y"]).quotient_dimension().unwrap(), 6);
    // Two general conics meet in four points.
    assert_eq!(gb(&r, &["x^2 + 3*x*y - y^2 + 5", "2*x^2 - x*y + 7*y + 1"]).quotient_dimension().unwrap(), 4);
}

#[test]
fn points_from_products_of_linear_forms() {
    // V(f(x + 2y + z), g(y + 3z), h(z)) with f, g, h products of distinct
    // linear factors has deg f * deg g * deg h reduced points.
    let r = ring3();
    let prod = |form: &str, roots: &[i64]| {
        let l = parse(&r, form);
        roots.iter().fold(MultiPoly::one(&r), |acc, &a| acc.mul(&l.sub(&MultiPoly::constant(&r, p().elem(a)))))
    };
    for (fr, gr, hr) in [(vec![1, 2], vec![0, 5, 9], vec![3]), (vec![4, 6, 8], vec![1, 2], vec![0, 7])] {
        let gens = vec![prod("x + 2*y + z", &fr), prod("y + 3*z", &gr), prod("z", &hr)];
        let basis = buchberger(&Ideal::new(&r, gens).unwrap(), &Budget::default()).unwrap();
        assert!(basis.is_zero_dimensional());
        assert_eq!(basis.quotient_dimension().unwrap(), (fr.len() * gr.len() * hr.len()) as u64);
    }
}

#[test]
fn lex_and_degrevlex_agree_on_dimension() {
    // Counts cross-checked with an independent computer algebra system.
    // The first system loses six of its Bézout points to infinity.
    let cases: [([&str; 3], u64); 2] = [
        (["x^2 + y*z - 1", "y^2 - x*z + 2", "z^2 + x*y - 3"], 2),
        (["x^2 + 3*y*z + 2*x*y - 1", "y^2 + 5*x*z - 7*z + 2", "z^2 + x*y + 4*x - 3"], 8),
    ];
    let lex = PolyRing::with_order(&["x", "y", "z"], p(), MonomialOrder::lex(3)).unwrap();
    for (gens, expected) in cases {
        assert_eq!(gb(&ring3(), &gens).quotient_dimension().unwrap(), expected);
        assert_eq!(gb(&lex, &gens).quotient_dimension().unwrap(), expected);
    }
}

fn arb_poly(ring: Arc<PolyRing>) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), 1u32..32003), 1..4).prop_map(move |terms| {
        MultiPoly::from_terms(
            &ring,
            terms.into_iter().map(|((a, b, c), k)| (Monomial::from_exps(&[a, b, c]).unwrap(), k)),
        )
    })
}

fn arb_ideal() -> impl Strategy<Value = Vec<MultiPoly>> {
    prop::collection::vec(arb_poly(ring3()), 1..4)
}

fn small_budget() -> Budget {
    Budget { max_steps: 200_000, max_time: std::time::Duration::from_secs(20) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_polynomials_reduce_to_zero(gens in arb_ideal()) {
        let ideal = Ideal::new(&ring3(), gens).unwrap();
        let Ok(g) = buchberger(&ideal, &small_budget()) else { return Ok(()) };
        let els = g.elements();
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                prop_assert!(g.normal_form(&s_poly(&els[i], &els[j])).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn generators_are_members(gens in arb_ideal()) {
        let ideal = Ideal::new(&ring3(), gens.clone()).unwrap();
        let Ok(g) = buchberger(&ideal, &small_budget()) else { return Ok(()) };
        for f in &gens {
            prop_assert!(g.normal_form(f).unwrap().is_zero());
        }
        // Products with arbitrary multipliers stay in the ideal.
        let combo = gens.iter().enumerate().fold(MultiPoly::zero(&ring3()), |acc, (i, f)| {
            acc.add(&f.mul(&parse(&ring3(), &format!("x*y + {} * z + 1", i + 2))))
        });
        prop_assert!(g.normal_form(&combo).unwrap().is_zero());
    }

    #[test]
    fn insertion_order_independence(gens in arb_ideal()) {
        let fwd = buchberger(&Ideal::new(&ring3(), gens.clone()).unwrap(), &small_budget());
        let mut rev = gens.clone();
        rev.reverse();
        let bwd = buchberger(&Ideal::new(&ring3(), rev).unwrap(), &small_budget());
        if let (Ok(a), Ok(b)) = (fwd, bwd) {
            prop_assert_eq!(canonical(&a), canonical(&b));
        }
    }

    #[test]
    fn reduced_basis_is_interreduced(gens in arb_ideal()) {
        let ideal = Ideal::new(&ring3(), gens).unwrap();
        let Ok(g) = buchberger(&ideal, &small_budget()) else { return Ok(()) };
        let lms = g.leading_monomials();
        for (i, f) in g.elements().iter().enumerate() {
            prop_assert_eq!(f.leading_coeff().map(|c| c.value()), Some(1));
            for (mono, _) in f.terms() {
                for (j, l) in lms.iter().enumerate() {
                    prop_assert!(i == j || !l.divides(mono));
                }
            }
        }
    }
}
