//! Suites over differential objects: the object/bundle correspondence, the
//! coherence of the canonical structure, and the differential it induces.

use rand::Rng;

use crate::bundle::{bundle_from_diffobj, canonical_derived_d, diffobj_from_bundle, pullback_bundle, standard, tangent_bundle, transport, DiffBundle, DiffObject};
use crate::cartesian::PolyCartesian;
use crate::cdc;
use crate::error::Result;
use crate::polymap::PolyMap;
use crate::random::{random_map, random_point, Sampler, Shape};
use crate::report::{Checks, Comparable};
use crate::scalar::Semiring;
use crate::suites::bundle::random_automorphism;
use crate::suites::cdc::cd_axioms;

/// Largest object dimension in the coherence checks.
pub const CDS_MAX_DIM: usize = 2;

fn pair<T>(r: Result<(T, T)>) -> (Result<T>, Result<T>) {
    crate::bundle::split(r)
}

/// The defining identities of a differential object.
fn object_checks<C: Semiring>(checks: &mut Checks, o: &DiffObject<C>, inst: &dyn Fn() -> String) {
    let k = o.dim;
    let c = |f: &PolyMap<C>, g: &PolyMap<C>| f.compose(g);
    let half = |lo| PolyMap::<C>::proj(2 * k, lo, lo + k).expect("in range");
    checks.ok("object/splitting-invertible", inst, &o.splitting_inverse());
    let b = bundle_from_diffobj(o);
    let lambda = b.as_ref().map(|b| b.lambda().clone()).map_err(Clone::clone);
    let with_lambda = |g: &PolyMap<C>| lambda.as_ref().map_err(Clone::clone).and_then(|l| l.compose(g));
    checks.eq("object/lift-then-second-projection", inst, with_lambda(&o.phat), Ok(PolyMap::identity(k)));
    checks.eq("object/lift-then-projection", inst, with_lambda(&cdc::tangent_proj(k)), Ok(o.bang_zeta()));

    // p̂ is additive for (p, +, 0) → (!, σ, ζ) and for (T(σ), T(ζ)) → (σ, ζ).
    let n3 = 3 * k;
    let tangent_leg = |i: usize| -> PolyMap<C> {
        let idx: Vec<usize> = (i * k..(i + 1) * k).chain(2 * k..3 * k).collect();
        PolyMap::select(n3, &idx).expect("in range")
    };
    let lhs = c(&cdc::tangent_plus(k), &o.phat);
    let rhs = (|| c(&c(&tangent_leg(0), &o.phat)?.pair(&c(&tangent_leg(1), &o.phat)?)?, &o.sigma))();
    checks.eq("object/second-projection-preserves-tangent-sum", inst, lhs, rhs);
    checks.eq("object/second-projection-preserves-tangent-zero", inst, c(&cdc::tangent_zero(k), &o.phat), Ok(o.bang_zeta()));
    let lhs = c(&cdc::cdc_t(&o.sigma), &o.phat);
    let rhs = (|| {
        let t0 = cdc::cdc_t(&half(0));
        let t1 = cdc::cdc_t(&half(k));
        c(&c(&t0, &o.phat)?.pair(&c(&t1, &o.phat)?)?, &o.sigma)
    })();
    checks.eq("object/second-projection-preserves-sum", inst, lhs, rhs);
    checks.eq(
        "object/second-projection-preserves-zero",
        inst,
        c(&cdc::cdc_t(&o.zeta), &o.phat),
        Ok(PolyMap::zero(0, 0).compose(&o.zeta).expect("composable")),
    );
    let lhs = (|| c(&c(&cdc::vertical_lift(k), &cdc::cdc_t(&o.phat))?, &o.phat))();
    checks.eq("object/lift-coherence", inst, lhs, Ok(o.phat.clone()));
    let lhs = (|| c(&c(&cdc::canonical_flip(k), &cdc::cdc_t(&o.phat))?, &o.phat))();
    checks.eq("object/flip-identity", inst, lhs, c(&cdc::cdc_t(&o.phat), &o.phat));
    if let Ok(b) = &b {
        checks.merge("object/as-bundle", b.verify());
    }
}

/// A differential object: canonical, or transported along a fibre automorphism.
fn random_object<C: Semiring>(rng: &mut Sampler, shape: &Shape, k: usize) -> Result<DiffObject<C>> {
    let b = standard::<C>(0, k, false);
    if rng.random_bool(0.5) {
        return diffobj_from_bundle(&b);
    }
    let linear_shape = Shape { max_degree: 0, ..*shape };
    let (phi, psi) = random_automorphism(rng, &linear_shape, &b)?;
    diffobj_from_bundle(&transport(&b, &phi, &psi)?)
}

pub fn diffobj<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for k in 1..=max_dim {
        let inst = || format!("canonical({k})");
        let o = DiffObject::<C>::canonical(k);
        object_checks(&mut checks, &o, &inst);
        let from_standard = diffobj_from_bundle(&standard::<C>(0, k, false));
        checks.eq("standard-over-point/second-projection", inst, from_standard.map(|o| o.phat), PolyMap::proj(2 * k, 0, k));
        let back = bundle_from_diffobj(&o).and_then(|b| diffobj_from_bundle(&b));
        checks.eq("round-trip/object-bundle-object", inst, back.map(|b| b.phat), Ok(o.phat.clone()));
        let b = standard::<C>(0, k, false);
        let again = diffobj_from_bundle(&b).and_then(|o| bundle_from_diffobj(&o));
        let field = |get: fn(&DiffBundle<C>) -> &PolyMap<C>| again.as_ref().map(|a| get(a).clone()).map_err(Clone::clone);
        checks.eq("round-trip/bundle-object-bundle/sum", inst, field(|b| b.sigma()), Ok(b.sigma().clone()));
        checks.eq("round-trip/bundle-object-bundle/zero", inst, field(|b| b.zeta()), Ok(b.zeta().clone()));
        checks.eq("round-trip/bundle-object-bundle/lift", inst, field(|b| b.lambda()), Ok(b.lambda().clone()));
    }
    for i in 0..instances {
        let k = rng.random_range(1..=max_dim);
        match random_object::<C>(rng, shape, k) {
            Ok(o) => {
                let inst = || format!("instance={i}, p̂={}, σ={}", o.phat.render(), o.sigma.render());
                object_checks(&mut checks, &o, &inst);
            }
            Err(e) => {
                checks.ok::<()>("object/constructs", || format!("instance={i}"), &Err(e));
            }
        }

        // Fibres over points are differential objects.
        let m = rng.random_range(1..=max_dim);
        let a: PolyMap<C> = random_point(rng, 0, m, shape.coeff_bound);
        let target = if rng.random_bool(0.5) { tangent_bundle::<C>(m) } else { standard(m, k, false) };
        let inst = || format!("instance={i}, point={}, bundle={}", a.render(), target.label);
        let fibre = pullback_bundle(&a, &target).and_then(|pb| diffobj_from_bundle(&pb.bundle));
        checks.ok("fibre-over-point/is-object", inst, &fibre);
        if let Ok(o) = fibre {
            let mut sub = Checks::new();
            object_checks(&mut sub, &o, &inst);
            checks.merge("fibre-over-point", sub);
        }
    }
    let b = standard::<C>(0, 1, false);
    let three = PolyMap::constant(0, &[C::from_u64(3)]);
    let f = PolyMap::constant(0, &[C::from_u64(3), C::zero()]);
    checks.eq("bracket/constant-tangent-vector", || "f = (3, 0) into T(R)".into(), b.bracket(&f), Ok(three));
    checks
}

/// `(a, b, c, d) ↦ (a, c, b, d)` on blocks of widths `(p, q, p, q)`.
fn middle_swap<C: Semiring>(p: usize, q: usize) -> PolyMap<C> {
    let n = 2 * (p + q);
    let idx: Vec<usize> = (0..p).chain(p + q..2 * p + q).chain(p..p + q).chain(2 * p + q..n).collect();
    PolyMap::select(n, &idx).expect("in range")
}

/// `⟨π0 f, π1 g⟩` into `T(A×B) = (du_A, du_B, x_A, x_B)` for `f: X → T(A)`, `g: X → T(B)`.
fn tangent_pair<C: Semiring>(f: &PolyMap<C>, g: &PolyMap<C>, a: usize, b: usize) -> Result<PolyMap<C>> {
    let part = |h: &PolyMap<C>, n: usize, lo: usize| h.compose(&PolyMap::proj(2 * n, lo, lo + n)?);
    PolyMap::concat(&[&part(f, a, 0)?, &part(g, b, 0)?, &part(f, a, a)?, &part(g, b, b)?])
}

/// Coherence of the canonical assignment under products and `T`.
pub fn cds<C: Semiring>(max_dim: usize) -> Checks {
    let mut checks = Checks::new();
    let top = max_dim.min(CDS_MAX_DIM);
    let obj = |k| DiffObject::<C>::canonical(k);
    let lift = |k| bundle_from_diffobj(&obj(k)).map(|b| b.lambda().clone());
    let mu = |k| bundle_from_diffobj(&obj(k)).and_then(|b| b.mu());
    for a in 1..=top {
        for b in 1..=top {
            let inst = || format!("A={a}, B={b}");
            let n = a + b;
            let p0 = PolyMap::<C>::proj(n, 0, a).expect("in range");
            let p1 = PolyMap::<C>::proj(n, a, n).expect("in range");
            let rhs = (|| tangent_pair(&p0.compose(&lift(a)?)?, &p1.compose(&lift(b)?)?, a, b))();
            checks.eq("product/lift", inst, lift(n), rhs);
            let rhs = middle_swap::<C>(a, b).compose(&obj(a).sigma.product(&obj(b).sigma));
            checks.eq("product/sum", inst, Ok(obj(n).sigma), rhs);
            checks.eq("product/zero", inst, Ok(obj(n).zeta), obj(a).zeta.pair(&obj(b).zeta));
            let rhs = (|| cdc::cdc_t(&p0).compose(&obj(a).phat)?.pair(&cdc::cdc_t(&p1).compose(&obj(b).phat)?))();
            checks.eq("product/second-projection", inst, Ok(obj(n).phat), rhs);
        }
        let inst = || format!("A={a}");
        let (o, to) = (obj(a), obj(2 * a));
        let rhs = lift(a).and_then(|l| cdc::cdc_t(&l).compose(&cdc::canonical_flip(a)));
        checks.eq("tangent/lift", inst, lift(2 * a), rhs);
        checks.eq("tangent/sum", inst, Ok(to.sigma.clone()), middle_swap::<C>(a, a).compose(&cdc::cdc_t(&o.sigma)));
        checks.eq("tangent/zero", inst, Ok(to.zeta.clone()), Ok(cdc::cdc_t(&o.zeta)));
        checks.eq("tangent/second-projection", inst, Ok(to.phat.clone()), cdc::canonical_flip(a).compose(&cdc::cdc_t(&o.phat)));
        let tp = cdc::cdc_t(&o.phat);
        checks.eq("flip-identity", inst, cdc::canonical_flip(a).compose(&tp).and_then(|f| f.compose(&o.phat)), tp.compose(&o.phat));
        let exchange = (|| -> Result<(PolyMap<C>, PolyMap<C>)> {
            let both = mu(2 * a)?.compose(&cdc::cdc_t(&mu(a)?))?;
            Ok((cdc::exchange(a).compose(&both)?, both.compose(&cdc::canonical_flip(a))?))
        })();
        let (l, r) = pair(exchange);
        checks.eq("exchange", inst, l, r);
        checks.ok("splitting-invertible", inst, &o.splitting_inverse());
    }
    checks
}

pub fn derived_differential<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    let top = max_dim.min(3);
    for dom in 1..=top {
        for cod in 1..=top {
            for i in 0..instances {
                let f: PolyMap<C> = random_map(rng, dom, cod, shape);
                let inst = || format!("instance={i}, f={}", f.render());
                checks.eq("derived/matches-symbolic", inst, canonical_derived_d(&f), Ok(cdc::cdc_d(&f)));
            }
        }
        let inst = || format!("dim={dom}");
        checks.eq("derived/of-identity", inst, canonical_derived_d(&PolyMap::<C>::identity(dom)), PolyMap::proj(2 * dom, 0, dom));
        let konst: PolyMap<C> = random_point(rng, dom, dom, shape.coeff_bound);
        checks.eq("derived/of-constant", inst, canonical_derived_d(&konst), Ok(PolyMap::zero(2 * dom, dom)));
    }
    let derived = PolyCartesian::<C>::with_differential("derived differential", canonical_derived_d::<C>);
    checks.merge("derived-axioms", cd_axioms(&derived, rng, shape, max_dim, instances));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::sampler;
    use crate::report::{Params, Status};
    use crate::scalar::{Natural, Rational};
    use std::time::Instant;

    fn run(name: &str, c: Checks) -> crate::report::Report {
        let r = c.finish(name, &Params::default(), Instant::now());
        assert!(r.success(), "{}", r.to_json());
        r
    }

    #[test]
    fn suites_pass_in_both_modes() {
        run("diffobj", diffobj::<Rational>(&mut sampler(5), &Shape::default(), 3, 5));
        run("diffobj", diffobj::<Natural>(&mut sampler(5), &Shape::default(), 3, 5));
        run("cds", cds::<Rational>(3));
        run("cds", cds::<Natural>(3));
        run("derived-differential", derived_differential::<Rational>(&mut sampler(5), &Shape::default(), 3, 3));
        run("derived-differential", derived_differential::<Natural>(&mut sampler(5), &Shape::default(), 3, 3));
    }

    #[test]
    fn second_projection_assignment_is_rejected() {
        let mut o = DiffObject::<Rational>::canonical(1);
        o.phat = PolyMap::proj(2, 1, 2).unwrap();
        let mut checks = Checks::new();
        object_checks(&mut checks, &o, &|| "p̂ = π1".into());
        let r = checks.finish("cds", &Params::default(), Instant::now());
        assert_eq!(r.check("object/splitting-invertible").unwrap().status, Status::Fail);
    }
}
