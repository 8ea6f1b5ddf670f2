use proptest::prelude::*;

use tancat::bundle::{canonical_derived_d, pullback_bundle, standard, tangent_bundle, verify_bundle};
use tancat::cdc::{canonical_flip, cdc_d, cdc_t, tangent_proj, tangent_zero, vertical_lift};
use tancat::dual::{dual_eval, NumericProgram};
use tancat::parse::parse_polymap;
use tancat::random::random_polymap;
use tancat::report::{Params, Report};
use tancat::suites::run_suite;
use tancat::{Natural, Poly, PolyMap, Rational, Semiring};

fn map<C: Semiring>(dom: usize, cod: usize, seed: u64) -> PolyMap<C> {
    random_polymap(dom, cod, 3, 5, seed)
}

/// Directional derivative by substitution: the `t`-linear part of
/// `f(x + t u)`, on the `(u, x)` layout.
fn derivative_oracle<C: Semiring>(f: &PolyMap<C>) -> PolyMap<C> {
    let m = f.dom();
    let n = 2 * m + 1;
    let t = Poly::var(n, 2 * m).unwrap();
    let shifted: Vec<Poly<C>> = (0..m)
        .map(|i| Poly::var(n, m + i).unwrap().add(&t.mul(&Poly::var(n, i).unwrap()).unwrap()).unwrap())
        .collect();
    let comps = f
        .components()
        .iter()
        .map(|p| {
            let full = p.substitute(&shifted, n).unwrap();
            let linear = full.terms().filter(|(e, _)| e.0[2 * m] == 1).map(|(e, c)| (e.0[..2 * m].to_vec(), c.clone()));
            Poly::from_terms(2 * m, linear).unwrap()
        })
        .collect();
    PolyMap::new(2 * m, comps).unwrap()
}

fn dims() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=3, 1usize..=3, 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivative_matches_substitution_oracle((m, n, _) in dims(), seed in any::<u64>()) {
        let f = map::<Rational>(m, n, seed);
        prop_assert_eq!(cdc_d(&f), derivative_oracle(&f));
        let g = map::<Natural>(m, n, seed);
        prop_assert_eq!(cdc_d(&g), derivative_oracle(&g));
    }

    #[test]
    fn tangent_is_a_functor((a, b, c) in dims(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = map::<Rational>(a, b, s1);
        let g = map::<Rational>(b, c, s2);
        prop_assert_eq!(cdc_t(&f.compose(&g).unwrap()), cdc_t(&f).compose(&cdc_t(&g)).unwrap());
        prop_assert_eq!(cdc_t(&PolyMap::<Rational>::identity(a)), PolyMap::identity(2 * a));
    }

    #[test]
    fn structural_maps_are_natural((m, n, _) in dims(), seed in any::<u64>()) {
        let f = map::<Natural>(m, n, seed);
        let tf = cdc_t(&f);
        let ttf = cdc_t(&tf);
        prop_assert_eq!(tf.compose(&tangent_proj(n)).unwrap(), tangent_proj(m).compose(&f).unwrap());
        prop_assert_eq!(f.compose(&tangent_zero(n)).unwrap(), tangent_zero(m).compose(&tf).unwrap());
        prop_assert_eq!(tf.compose(&vertical_lift(n)).unwrap(), vertical_lift(m).compose(&ttf).unwrap());
        prop_assert_eq!(ttf.compose(&canonical_flip(n)).unwrap(), canonical_flip(m).compose(&ttf).unwrap());
    }

    #[test]
    fn rendering_reparses((m, n, _) in dims(), seed in any::<u64>()) {
        let f = map::<Rational>(m, n, seed);
        prop_assert_eq!(parse_polymap::<Rational>(&f.to_string(), Some(m)).unwrap(), f);
        let g = map::<Natural>(m, n, seed);
        prop_assert_eq!(parse_polymap::<Natural>(&g.to_string(), Some(m)).unwrap(), g);
    }

    #[test]
    fn derived_differential_is_the_symbolic_one((m, n, _) in dims(), seed in any::<u64>()) {
        let f = map::<Rational>(m, n, seed);
        prop_assert_eq!(canonical_derived_d(&f).unwrap(), cdc_d(&f));
    }

    #[test]
    fn dual_numbers_agree_with_symbolic_derivative(
        (m, n, _) in dims(),
        seed in any::<u64>(),
        point in prop::collection::vec(-2.0f64..2.0, 3),
        dir in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let f = map::<Rational>(m, n, seed);
        let (x, u) = (&point[..m], &dir[..m]);
        let (value, tangent) = dual_eval(&NumericProgram::from_polymap(&f).unwrap(), x, u).unwrap();
        let ux: Vec<f64> = u.iter().chain(x).copied().collect();
        let expected = cdc_d(&f).eval_f64(&ux);
        let scale = |v: &[f64]| v.iter().fold(1.0f64, |a, b| a.max(b.abs()));
        for (a, b) in tangent.iter().zip(&expected) {
            prop_assert!((a - b).abs() <= 1e-9 * scale(&expected), "{a} vs {b}");
        }
        for (a, b) in value.iter().zip(f.eval_f64(x)) {
            prop_assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn pullbacks_of_tangent_bundles_verify(base in 1usize..=2, dom in 1usize..=2, seed in any::<u64>()) {
        let f = map::<Rational>(dom, base, seed);
        let pb = pullback_bundle(&f, &tangent_bundle(base)).unwrap();
        let report = verify_bundle(&pb.bundle).finish("pullback", &Params::default(), std::time::Instant::now());
        prop_assert!(report.success(), "{}", report.to_json());
    }

    #[test]
    fn bracket_inverts_unbracket(m in 1usize..=2, k in 1usize..=2, x in 1usize..=2, s1 in any::<u64>(), s2 in any::<u64>()) {
        let b = standard::<Rational>(m, k, false);
        let y = map::<Rational>(x, m + k, s1);
        // h shares y's base point and has an arbitrary fibre part.
        let h = b.from_parts(&y.compose(b.q()).unwrap(), &map(x, k, s2)).unwrap();
        let f = b.unbracket(&h, &y).unwrap();
        prop_assert_eq!(b.bracket(&f).unwrap(), h);
    }

    #[test]
    fn suites_are_seed_deterministic(seed in any::<u64>()) {
        let p = Params { max_dim: 2, max_degree: 2, instances: 3, seed, ..Params::default() };
        let once = |name| -> Report { run_suite(name, &p).unwrap() };
        for name in ["cdc-axioms", "bundle", "fibration"] {
            prop_assert_eq!(once(name).to_json_without_time(), once(name).to_json_without_time());
        }
    }
}
