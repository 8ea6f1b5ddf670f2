//! The Cartesian differential axioms, generic over a [`CartesianDiff`].

use crate::cartesian::CartesianDiff;
use crate::error::Result;
use crate::random::{Sampler, Shape};
use crate::report::{Checks, Comparable};

/// `⟨⟨a, b⟩, ⟨c, d⟩⟩ : Z → (A×A)×(A×A)`.
fn square<K: CartesianDiff>(k: &K, a: &K::Mor, b: &K::Mor, c: &K::Mor, d: &K::Mor) -> Result<K::Mor> {
    k.pair(&k.pair(a, b)?, &k.pair(c, d)?)
}

/// One instance of every axiom for random `f, g: A → B` and `h: B → C`.
pub fn axiom_instance<K: CartesianDiff>(k: &K, rng: &mut Sampler, shape: &Shape, max_dim: usize, instance: usize) -> Checks {
    let mut checks = Checks::new();
    let a = k.random_obj(rng, max_dim);
    let b = k.random_obj(rng, max_dim);
    let c = k.random_obj(rng, max_dim);
    let f = k.random_mor(rng, &a, &b, shape);
    let g = k.random_mor(rng, &a, &b, shape);
    let h = k.random_mor(rng, &b, &c, shape);
    let inst = || format!("{}, instance={instance}, f={}, g={}, h={}", k.describe(), f.render(), g.render(), h.render());
    let ta = k.product(&a, &a);
    let df = k.diff(&f);

    // Additivity of the combinator.
    let lhs = k.add(&f, &g).and_then(|s| k.diff(&s));
    let rhs = df.as_ref().map_err(Clone::clone).and_then(|df| k.add(df, &k.diff(&g)?));
    checks.eq("differential-of-sum", inst, lhs, rhs);
    checks.eq("differential-of-zero", inst, k.diff(&k.zero(&a, &b)), Ok(k.zero(&ta, &b)));

    // Additivity in the direction, free variables `(a, b, c)` on `A×(A×A)`.
    let z3 = [a.clone(), a.clone(), a.clone()];
    let run = |da: &K::Mor, db: &K::Mor, pt: &K::Mor| -> Result<(K::Mor, K::Mor)> {
        let df = df.as_ref().map_err(Clone::clone)?;
        let lhs = k.compose(&k.pair(&k.add(da, db)?, pt)?, df)?;
        let r1 = k.compose(&k.pair(da, pt)?, df)?;
        let r2 = k.compose(&k.pair(db, pt)?, df)?;
        Ok((lhs, k.add(&r1, &r2)?))
    };
    let free = (|| -> Result<_> { run(&k.proj_n(&z3, 0)?, &k.proj_n(&z3, 1)?, &k.proj_n(&z3, 2)?) })();
    let (l, r) = split(free);
    checks.eq("additive-in-direction", inst, l, r);
    let one = k.terminal();
    let pts: Vec<K::Mor> = (0..4).map(|_| k.random_point(rng, &a, shape.coeff_bound)).collect();
    let (l, r) = split(run(&pts[0], &pts[1], &pts[2]));
    checks.eq("additive-in-direction/at-points", inst, l, r);
    let lhs = df.as_ref().map_err(Clone::clone).and_then(|df| k.compose(&k.pair(&k.zero(&a, &a), &k.identity(&a))?, df));
    checks.eq("zero-direction", inst, lhs, Ok(k.zero(&a, &b)));

    // Projections and pairing.
    let ab = k.product(&a, &b);
    let lhs = k.diff(&k.proj0(&a, &b));
    let rhs = k.compose(&k.proj0(&ab, &ab), &k.proj0(&a, &b));
    checks.eq("differential-of-first-projection", inst, lhs, rhs);
    let lhs = k.diff(&k.proj1(&a, &b));
    let rhs = k.compose(&k.proj0(&ab, &ab), &k.proj1(&a, &b));
    checks.eq("differential-of-second-projection", inst, lhs, rhs);
    let lhs = k.pair(&f, &g).and_then(|fg| k.diff(&fg));
    let rhs = df.as_ref().map_err(Clone::clone).and_then(|df| k.pair(df, &k.diff(&g)?));
    checks.eq("differential-of-pairing", inst, lhs, rhs);

    // Chain rule.
    let lhs = k.compose(&f, &h).and_then(|fh| k.diff(&fh));
    let rhs = (|| -> Result<K::Mor> {
        let point_f = k.compose(&k.proj1(&a, &a), &f)?;
        k.compose(&k.pair(df.as_ref().map_err(Clone::clone)?, &point_f)?, &k.diff(&h)?)
    })();
    checks.eq("chain-rule", inst, lhs, rhs);

    // Second-order axioms.
    let ddf = df.as_ref().map_err(Clone::clone).and_then(|df| k.diff(df));
    let linear = |x: &K::Mor, y: &K::Mor, dom: &K::Obj| -> Result<(K::Mor, K::Mor)> {
        let ddf = ddf.as_ref().map_err(Clone::clone)?;
        let df = df.as_ref().map_err(Clone::clone)?;
        let zero = k.zero(dom, &a);
        let lhs = k.compose(&square(k, x, &zero, &zero, y)?, ddf)?;
        let rhs = k.compose(&k.pair(x, y)?, df)?;
        Ok((lhs, rhs))
    };
    let (l, r) = split(linear(&k.proj0(&a, &a), &k.proj1(&a, &a), &ta));
    checks.eq("second-order-linear-direction", inst, l, r);
    let (l, r) = split(linear(&pts[0], &pts[3], &one));
    checks.eq("second-order-linear-direction/at-points", inst, l, r);

    let symmetric = |xs: [&K::Mor; 4]| -> Result<(K::Mor, K::Mor)> {
        let ddf = ddf.as_ref().map_err(Clone::clone)?;
        let lhs = k.compose(&square(k, xs[0], xs[1], xs[2], xs[3])?, ddf)?;
        let rhs = k.compose(&square(k, xs[0], xs[2], xs[1], xs[3])?, ddf)?;
        Ok((lhs, rhs))
    };
    let z4 = [a.clone(), a.clone(), a.clone(), a.clone()];
    let free = (|| -> Result<_> {
        let ps = (0..4).map(|i| k.proj_n(&z4, i)).collect::<Result<Vec<_>>>()?;
        symmetric([&ps[0], &ps[1], &ps[2], &ps[3]])
    })();
    let (l, r) = split(free);
    checks.eq("symmetric-second-differential", inst, l, r);
    let (l, r) = split(symmetric([&pts[0], &pts[1], &pts[2], &pts[3]]));
    checks.eq("symmetric-second-differential/at-points", inst, l, r);
    checks
}

fn split<T: Clone>(r: Result<(T, T)>) -> (Result<T>, Result<T>) {
    match r {
        Ok((l, r)) => (Ok(l), Ok(r)),
        Err(e) => (Err(e.clone()), Err(e)),
    }
}

pub fn cd_axioms<K: CartesianDiff>(k: &K, rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for i in 0..instances {
        checks.merge("", axiom_instance(k, rng, shape, max_dim, i));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::PolyCartesian;
    use crate::random::sampler;
    use crate::report::{Params, Status};
    use crate::scalar::{Natural, Rational};
    use crate::polymap::PolyMap;

    fn run<K: CartesianDiff>(k: &K, instances: usize) -> crate::report::Report {
        let started = std::time::Instant::now();
        cd_axioms(k, &mut sampler(3), &Shape::default(), 2, instances).finish("cdc-axioms", &Params::default(), started)
    }

    #[test]
    fn symbolic_differential_passes_in_both_modes() {
        let r = run(&PolyCartesian::<Rational>::symbolic(), 8);
        assert!(r.success(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 13);
        let r = run(&PolyCartesian::<Natural>::symbolic(), 8);
        assert!(r.success(), "{}", r.to_json());
    }

    #[test]
    fn wrong_differential_is_caught() {
        // `D f = π1 f` is additive but fails the projection and chain rules.
        let k = PolyCartesian::<Rational>::with_differential("point value", |f| {
            let m = f.dom();
            PolyMap::proj(2 * m, m, 2 * m)?.compose(f)
        });
        let r = run(&k, 4);
        assert!(!r.success());
        let failing: Vec<&str> = r.failing().map(|c| c.name.as_str()).collect();
        assert!(failing.contains(&"differential-of-first-projection"));
        assert!(failing.contains(&"zero-direction"));
        assert_eq!(r.check("differential-of-sum").unwrap().status, Status::Pass);
    }
}
