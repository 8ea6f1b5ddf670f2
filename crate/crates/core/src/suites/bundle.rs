//! Suites over differential bundles: the axioms on constructed bundles, the
//! bracket laws, interchange of additions, and linear morphisms.

use std::time::{Duration, Instant};

use rand::Rng;

use crate::bundle::{
    pullback_bundle, standard, tangent_bundle, tangent_of_bundle, transport, trivial, whitney_sum, BundleMor, DiffBundle,
};
use crate::cdc;
use crate::error::Result;
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::random::{random_map, Sampler, Shape};
use crate::report::{Checks, Comparable};
use crate::scalar::Semiring;

/// Wall-clock budget for building and verifying one bundle.
pub const BUNDLE_BUDGET: Duration = Duration::from_secs(5);
/// Random maps pulled back along in the bundle suite.
pub const PULLBACKS: usize = 20;
/// Instances per law in the bracket-laws suite.
pub const BRACKET_INSTANCES: usize = 25;

fn pair<T>(r: Result<(T, T)>) -> (Result<T>, Result<T>) {
    crate::bundle::split(r)
}

/// A fibre automorphism `φ` of `b` over the identity with inverse `ψ`: a
/// shear `(x, a) ↦ (x, a + s(x))` when negatives exist, otherwise a reversal
/// of the fibre coordinates.
pub fn random_automorphism<C: Semiring>(rng: &mut Sampler, shape: &Shape, b: &DiffBundle<C>) -> Result<(PolyMap<C>, PolyMap<C>)> {
    let (m, k, e) = (b.base(), b.fibre(), b.total());
    let s: PolyMap<C> = random_map(rng, m, k, shape);
    let shift = PolyMap::zero(e, m).pair(&PolyMap::proj(e, 0, m)?.compose(&s)?)?;
    let id = PolyMap::identity(e);
    let (fwd, bwd) = match id.sub(&shift) {
        Some(back) => (id.add(&shift)?, back),
        None => {
            let idx: Vec<usize> = (0..m).chain((m..e).rev()).collect();
            let rev = PolyMap::select(e, &idx)?;
            (rev.clone(), rev)
        }
    };
    Ok((b.triv().compose(&fwd)?.compose(b.triv_inv())?, b.triv().compose(&bwd)?.compose(b.triv_inv())?))
}

/// A bundle drawn from the constructors, with base dimension `m`.
pub fn random_bundle<C: Semiring>(rng: &mut Sampler, shape: &Shape, m: usize) -> Result<DiffBundle<C>> {
    let k = rng.random_range(1..=2);
    Ok(match rng.random_range(0..6) {
        0 => standard(m, k, false),
        1 => tangent_bundle(m),
        2 => {
            let src = rng.random_range(1..=2);
            let f = random_map(rng, m, src, shape);
            pullback_bundle(&f, &tangent_bundle(src))?.bundle
        }
        3 => whitney_sum(&standard(m, 1, false), &tangent_bundle(m))?.bundle,
        4 if m.is_multiple_of(2) => tangent_of_bundle(&standard(m / 2, 1, false))?,
        _ => {
            let b = standard(m, k, false);
            let (phi, psi) = random_automorphism(rng, shape, &b)?;
            transport(&b, &phi, &psi)?
        }
    })
}

fn verify_timed<C: Semiring>(checks: &mut Checks, family: &str, build: impl FnOnce() -> Result<DiffBundle<C>>) {
    let started = Instant::now();
    let built = build();
    let Ok(b) = built else {
        checks.ok(&format!("{family}/constructs"), || family.to_string(), &built);
        return;
    };
    checks.merge(family, b.verify());
    let elapsed = started.elapsed();
    checks.holds(
        &format!("{family}/within-time-budget"),
        || b.label.clone(),
        Ok(elapsed <= BUNDLE_BUDGET),
        || format!("took {} ms", elapsed.as_millis()),
    );
}

/// Verify every constructor bundle, the tangent bundle of each, pullbacks
/// along random maps and Whitney sums of random pairs.
pub fn bundle_suite<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize, corrupted: bool) -> Checks {
    let mut checks = Checks::new();
    for m in 1..=max_dim {
        let basics: Vec<(&str, DiffBundle<C>)> = vec![
            ("trivial", trivial(m)),
            ("standard", standard(m, 1, corrupted)),
            ("standard", standard(m, 2, corrupted)),
            ("tangent", tangent_bundle(m)),
        ];
        for (family, b) in basics {
            let tb = || tangent_of_bundle(&b);
            verify_timed(&mut checks, family, || Ok(b.clone()));
            verify_timed(&mut checks, &format!("tangent-of-{family}"), tb);
        }
    }
    let standard_over_point = standard::<C>(0, 2, corrupted);
    verify_timed(&mut checks, "standard", || Ok(standard_over_point));
    for _ in 0..PULLBACKS {
        let x = rng.random_range(1..=max_dim);
        let m = rng.random_range(1..=max_dim);
        let f: PolyMap<C> = random_map(rng, x, m, shape);
        let target = if rng.random_bool(0.5) { tangent_bundle(m) } else { standard(m, rng.random_range(1..=2), corrupted) };
        verify_timed(&mut checks, "pullback", || Ok(pullback_bundle(&f, &target)?.bundle));
    }
    for _ in 0..instances.min(10) {
        let m = rng.random_range(1..=max_dim);
        let b1 = random_bundle::<C>(rng, shape, m);
        let b2 = random_bundle::<C>(rng, shape, m);
        verify_timed(&mut checks, "whitney", || whitney_sum(&b1?, &b2?).map(|w| w.bundle));
        let b = random_bundle::<C>(rng, shape, m);
        verify_timed(&mut checks, "transport", || {
            let b = b?;
            let (phi, psi) = random_automorphism(rng, shape, &b)?;
            transport(&b, &phi, &psi)
        });
    }
    checks
}

/// A random point of `E` over `r`: `⟨r, a⟩ t⁻¹`.
fn point_over<C: Semiring>(rng: &mut Sampler, shape: &Shape, b: &DiffBundle<C>, r: &PolyMap<C>) -> Result<PolyMap<C>> {
    let a = random_map(rng, r.dom(), b.fibre(), shape);
    b.from_parts(r, &a)
}

/// The linear morphism `(pr_1, 1)` out of `b ⊕ standard(m, 1)`, with the sum.
fn whitney_projection<C: Semiring>(b: &DiffBundle<C>) -> Result<(DiffBundle<C>, BundleMor<C>)> {
    let w = whitney_sum(b, &standard(b.base(), 1, false))?;
    let mor = BundleMor::new(w.projections[0].clone(), PolyMap::identity(b.base()), &w.bundle, b)?;
    Ok((w.bundle, mor))
}

/// Small bundles for the bracket and interchange suites.
fn small_bundle<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize) -> Result<DiffBundle<C>> {
    let m = rng.random_range(1..=max_dim.min(2));
    random_bundle(rng, shape, m)
}

pub fn bracket_laws<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for i in 0..instances {
        let b = match small_bundle::<C>(rng, shape, max_dim) {
            Ok(b) => b,
            Err(e) => {
                checks.ok::<()>("bracket/bundle-constructs", || format!("instance={i}"), &Err(e));
                continue;
            }
        };
        let (m, e) = (b.base(), b.total());
        let x = rng.random_range(1..=2);
        let r: PolyMap<C> = random_map(rng, x, m, shape);
        let pts: Result<Vec<PolyMap<C>>> = (0..4).map(|_| point_over(rng, shape, &b, &r)).collect();
        let Ok(pts) = pts else {
            checks.ok("bracket/bundle-constructs", || format!("instance={i}"), &pts);
            continue;
        };
        let (h1, g1, h2, g2) = (&pts[0], &pts[1], &pts[2], &pts[3]);
        let f = b.unbracket(h1, g1);
        let g = b.unbracket(h2, g2);
        let g_shared = b.unbracket(h2, g1);
        let inst = || format!("instance={i}, bundle={}, h={}, y={}", b.label, h1.render(), g1.render());
        let br = |f: &Result<PolyMap<C>>| f.as_ref().map_err(Clone::clone).and_then(|f| b.bracket(f));
        let bf = br(&f);
        let with_f = |op: &dyn Fn(&PolyMap<C>) -> Result<PolyMap<C>>| f.as_ref().map_err(Clone::clone).and_then(op);

        checks.eq("bracket/recovers-factor", inst, bf.clone(), Ok(h1.clone()));

        // Precomposition: k{f} = {kf}.
        let y = rng.random_range(1..=2);
        let k: PolyMap<C> = random_map(rng, y, x, shape);
        checks.eq(
            "bracket/natural-in-domain",
            inst,
            bf.as_ref().map_err(Clone::clone).and_then(|bf| k.compose(bf)),
            with_f(&|f| b.bracket(&k.compose(f)?)),
        );

        // {x}h = {x T(h)} for linear (h, g), into b from a Whitney sum.
        let along_linear = (|| -> Result<(PolyMap<C>, PolyMap<C>)> {
            let (w, mor) = whitney_projection(&b)?;
            let xw = w.unbracket(&point_over(rng, shape, &w, &r)?, &point_over(rng, shape, &w, &r)?)?;
            Ok((w.bracket(&xw)?.compose(&mor.f)?, b.bracket(&xw.compose(&cdc::cdc_t(&mor.f))?)?))
        })();
        let (l, rr) = pair(along_linear);
        checks.eq("bracket/natural-in-linear-maps", inst, l, rr);
        let to_trivial = (|| -> Result<(PolyMap<C>, PolyMap<C>)> {
            let one = trivial::<C>(m);
            let f = f.clone()?;
            Ok((b.bracket(&f)?.compose(b.q())?, one.bracket(&f.compose(&cdc::cdc_t(b.q()))?)?))
        })();
        let (l, rr) = pair(to_trivial);
        checks.eq("bracket/natural-in-linear-maps", inst, l, rr);

        // {f} q = f T(q) p.
        let lhs = bf.as_ref().map_err(Clone::clone).and_then(|bf| bf.compose(b.q()));
        checks.eq("bracket/over-base", inst, lhs, with_f(&|f| f.compose(&cdc::cdc_t(b.q()))?.compose(&cdc::tangent_proj(m))));

        checks.eq("bracket/of-zero", inst, b.bracket(&cdc::tangent_zero(e)), b.q().compose(b.zeta()));

        // Sums through T(σ) and through +_E.
        let sum_of_brackets = |f: &Result<PolyMap<C>>, g: &Result<PolyMap<C>>| -> Result<PolyMap<C>> {
            b.pair_power(&[&br(f)?, &br(g)?])?.compose(b.sigma())
        };
        let via_t_sigma = (|| b.bracket(&b.pair_tangent_power(f.as_ref().map_err(Clone::clone)?, g.as_ref().map_err(Clone::clone)?)?.compose(&cdc::cdc_t(b.sigma()))?))();
        checks.eq("bracket/additive-through-tangent-sum", inst, sum_of_brackets(&f, &g), via_t_sigma);
        let via_plus = (|| {
            let fs = f.as_ref().map_err(Clone::clone)?;
            let gs = g_shared.as_ref().map_err(Clone::clone)?;
            b.bracket(&b.pair_tangent_sum(fs, gs)?.compose(&cdc::tangent_plus(e))?)
        })();
        checks.eq("bracket/additive-through-tangent-addition", inst, sum_of_brackets(&f, &g_shared), via_plus);

        checks.eq("bracket/of-mu", inst, b.mu().and_then(|mu| b.bracket(&mu)), b.leg(2, 0));
        checks.eq("bracket/of-lift", inst, b.bracket(b.lambda()), Ok(PolyMap::identity(e)));

        // T({f}) = {T(f) c} in T(B).
        let tangent = (|| -> Result<(PolyMap<C>, PolyMap<C>)> {
            let tb = tangent_of_bundle(&b)?;
            let tf = cdc::cdc_t(f.as_ref().map_err(Clone::clone)?);
            Ok((cdc::cdc_t(&b.bracket(f.as_ref().map_err(Clone::clone)?)?), tb.bracket(&tf.compose(&cdc::canonical_flip(e))?)?))
        })();
        let (l, rr) = pair(tangent);
        checks.eq("bracket/commutes-with-tangent", inst, l, rr);

        // The lift as an equalizer.
        checks.eq("equalizer/lift-over-zero", inst, b.lambda().compose(&cdc::cdc_t(b.q())), b.q().compose(&cdc::tangent_zero(m)));
        checks.eq("equalizer/lift-over-zero-section", inst, b.lambda().compose(&cdc::tangent_proj(e)), b.q().compose(b.zeta()));
        let vertical = (|| b.unbracket(h1, &h1.compose(b.q())?.compose(b.zeta())?))();
        let factored = vertical.as_ref().map_err(Clone::clone).and_then(|v| b.bracket(v)?.compose(b.lambda()));
        checks.eq("equalizer/factors-through-lift", inst, factored, vertical.clone());
        checks.eq("equalizer/zero-section-equalizes", inst, b.zeta().compose(&cdc::tangent_zero(e)), b.zeta().compose(b.lambda()));
        let xz = r.compose(b.zeta());
        let implication = (|| -> Result<bool> {
            let xz = xz.as_ref().map_err(Clone::clone)?;
            let hypothesis = xz.compose(&cdc::tangent_zero(e))? == xz.compose(b.lambda())?;
            Ok(!hypothesis || *xz == xz.compose(b.q())?.compose(b.zeta())?)
        })();
        checks.holds("equalizer/zero-detects-zero-section", inst, implication, || "x0 = xλ but x ≠ xqζ".into());
    }
    checks
}

/// `(dx, da, x, a) T(t⁻¹)` from trivialized blocks.
fn tangent_vector<C: Semiring>(b: &DiffBundle<C>, blocks: [&PolyMap<C>; 4]) -> Result<PolyMap<C>> {
    PolyMap::concat(&blocks)?.compose(&cdc::cdc_t(b.triv_inv()))
}

pub fn interchange<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for i in 0..instances {
        let b = match small_bundle::<C>(rng, shape, max_dim) {
            Ok(b) => b,
            Err(e) => {
                checks.ok::<()>("interchange/bundle-constructs", || format!("instance={i}"), &Err(e));
                continue;
            }
        };
        let (m, k, e) = (b.base(), b.fibre(), b.total());
        let d = rng.random_range(1..=2);
        let mut rnd = |n: usize| -> PolyMap<C> { random_map(rng, d, n, shape) };
        let x = rnd(m);
        let (dx12, dx34) = (rnd(m), rnd(m));
        let (a13, a24) = (rnd(k), rnd(k));
        let da: Vec<PolyMap<C>> = (0..4).map(|_| rnd(k)).collect();
        let inst = || format!("instance={i}, bundle={}, x={}", b.label, x.render());
        let t_sigma = cdc::cdc_t(b.sigma());
        let plus = cdc::tangent_plus::<C>(e);
        let both = (|| -> Result<(PolyMap<C>, PolyMap<C>)> {
            let v = [
                tangent_vector(&b, [&dx12, &da[0], &x, &a13])?,
                tangent_vector(&b, [&dx12, &da[1], &x, &a24])?,
                tangent_vector(&b, [&dx34, &da[2], &x, &a13])?,
                tangent_vector(&b, [&dx34, &da[3], &x, &a24])?,
            ];
            let s12 = b.pair_tangent_power(&v[0], &v[1])?.compose(&t_sigma)?;
            let s34 = b.pair_tangent_power(&v[2], &v[3])?.compose(&t_sigma)?;
            let p13 = b.pair_tangent_sum(&v[0], &v[2])?.compose(&plus)?;
            let p24 = b.pair_tangent_sum(&v[1], &v[3])?.compose(&plus)?;
            let lhs = b.pair_tangent_sum(&s12, &s34)?.compose(&plus)?;
            let rhs = b.pair_tangent_power(&p13, &p24)?.compose(&t_sigma)?;
            Ok((lhs, rhs))
        })();
        let (l, r) = pair(both);
        checks.eq("interchange/additions-commute", inst, l, r);

        let shared_zero = (|| -> Result<(PolyMap<C>, PolyMap<C>)> {
            let v1 = b.from_parts(&x, &da[0])?.compose(b.lambda())?;
            let v2 = b.from_parts(&x, &da[1])?.compose(b.lambda())?;
            Ok((b.pair_tangent_power(&v1, &v2)?.compose(&t_sigma)?, b.pair_tangent_sum(&v1, &v2)?.compose(&plus)?))
        })();
        let (l, r) = pair(shared_zero);
        checks.eq("interchange/vertical-sums-agree", inst, l, r);
    }
    checks
}

/// Records linear, additive and the μ-characterization for a morphism
/// expected to be linear.
fn expect_linear<C: Semiring>(checks: &mut Checks, family: &str, mor: Result<(BundleMor<C>, DiffBundle<C>, DiffBundle<C>)>) {
    let (mor, src, tgt) = match mor {
        Ok(t) => t,
        Err(e) => {
            checks.ok::<()>(&format!("{family}/constructs"), || family.to_string(), &Err(e));
            return;
        }
    };
    let inst = || format!("{} → {}, f={}", src.label, tgt.label, mor.f.render());
    checks.holds(&format!("{family}/linear"), inst, mor.is_linear(&src, &tgt), || "f λ' ≠ λ T(f)".into());
    checks.holds(&format!("{family}/additive"), inst, mor.is_additive(&src, &tgt), || "f does not preserve σ and ζ".into());
    checks.holds(&format!("{family}/commutes-with-mu"), inst, mor.commutes_with_mu(&src, &tgt), || "μ T(f) ≠ (f × f) μ'".into());
}

/// A morphism `standard(m, k) → standard(m', k')` over `g`, fibrewise
/// `a ↦ A(x) a + c(x)`; linear exactly when no offset or nonlinear term is added.
fn random_standard_mor<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, linear: bool) -> (BundleMor<C>, DiffBundle<C>, DiffBundle<C>) {
    let (m, m2) = (rng.random_range(1..=max_dim), rng.random_range(1..=max_dim));
    let (k, k2) = (rng.random_range(1..=2), rng.random_range(1..=2));
    let (src, tgt) = (standard::<C>(m, k, false), standard::<C>(m2, k2, false));
    let e = m + k;
    let g: PolyMap<C> = random_map(rng, m, m2, shape);
    let coeff_shape = Shape { max_degree: shape.max_degree.min(2), ..*shape };
    let fibre: Vec<Poly<C>> = (0..k2)
        .map(|_| {
            let mut acc = Poly::zero(e);
            for j in 0..k {
                let c = crate::random::random_poly::<C, _>(rng, m, &coeff_shape).reindex(e, &(0..m).collect::<Vec<_>>()).expect("in range");
                acc = acc.add(&c.mul(&Poly::var(e, m + j).expect("in range")).expect("same ring")).expect("same ring");
            }
            if !linear {
                let extra = match rng.random_range(0..2) {
                    0 => Poly::var(e, m).expect("in range").pow(2),
                    _ => Poly::one(e),
                };
                acc = acc.add(&extra).expect("same ring");
            }
            acc
        })
        .collect();
    let base = PolyMap::proj(e, 0, m).expect("in range").compose(&g).expect("composable");
    let f = base.pair(&PolyMap::new(e, fibre).expect("shared domain")).expect("same domain");
    (BundleMor::new(f, g, &src, &tgt).expect("over g by construction"), src, tgt)
}

pub fn linearity<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    let dims = max_dim.min(2);
    for i in 0..instances {
        let m = rng.random_range(1..=dims);
        let b = random_bundle::<C>(rng, shape, m);
        let one = trivial::<C>(m);
        expect_linear(&mut checks, "to-trivial", b.clone().and_then(|b| Ok((BundleMor::new(b.q().clone(), PolyMap::identity(m), &b, &one)?, b, one))));

        let n = rng.random_range(1..=dims);
        let f: PolyMap<C> = random_map(rng, n, m, shape);
        let (tn, tm) = (tangent_bundle::<C>(n), tangent_bundle::<C>(m));
        expect_linear(&mut checks, "tangent-map", BundleMor::new(cdc::cdc_t(&f), f.clone(), &tn, &tm).map(|mor| (mor, tn, tm)));

        expect_linear(&mut checks, "zero-into-tangent", b.clone().and_then(|b| {
            let tb = tangent_of_bundle(&b)?;
            Ok((BundleMor::new(cdc::tangent_zero(b.total()), cdc::tangent_zero(m), &b, &tb)?, b, tb))
        }));
        expect_linear(&mut checks, "projection-from-tangent", b.clone().and_then(|b| {
            let tb = tangent_of_bundle(&b)?;
            Ok((BundleMor::new(cdc::tangent_proj(b.total()), cdc::tangent_proj(m), &tb, &b)?, tb, b))
        }));
        expect_linear(&mut checks, "pullback-map", b.clone().and_then(|b| {
            let pb = pullback_bundle(&f, &b)?;
            Ok((BundleMor::new(pb.into_total, pb.over, &pb.bundle, &b)?, pb.bundle, b))
        }));
        expect_linear(&mut checks, "whitney-projection", b.clone().and_then(|b| {
            let (w, mor) = whitney_projection(&b)?;
            Ok((mor, w, b))
        }));
        let iso = b.clone().and_then(|b| {
            let (phi, psi) = random_automorphism(rng, shape, &b)?;
            let b2 = transport(&b, &phi, &psi)?;
            Ok((BundleMor::new(phi, PolyMap::identity(m), &b, &b2)?, BundleMor::new(psi, PolyMap::identity(m), &b2, &b)?, b, b2))
        });
        match iso {
            Ok((fwd, bwd, b, b2)) => {
                let inst = || format!("instance={i}, bundle={}", b.label);
                checks.eq("transport/mutually-inverse", inst, fwd.compose(&bwd), Ok(BundleMor::identity(&b)));
                expect_linear(&mut checks, "transport", Ok((fwd, b.clone(), b2.clone())));
                expect_linear(&mut checks, "transport-inverse", Ok((bwd, b2, b)));
            }
            Err(e) => {
                checks.ok::<()>("transport/constructs", || format!("instance={i}"), &Err(e));
            }
        }

        // Generated families: both linear and non-linear members.
        let (mor, src, tgt) = random_standard_mor::<C>(rng, shape, dims, i % 2 == 0);
        let inst = || format!("instance={i}, f={}, g={}", mor.f.render(), mor.g.render());
        type Facts = (bool, bool, bool, bool);
        let facts = (|| -> Result<Facts> {
            Ok((mor.is_linear(&src, &tgt)?, mor.is_additive(&src, &tgt)?, mor.commutes_with_mu(&src, &tgt)?, mor.preserves_zero(&src, &tgt)?))
        })();
        let pick = |p: &dyn Fn(&Facts) -> bool| facts.as_ref().map(p).map_err(Clone::clone);
        checks.holds("family/linear-iff-mu-and-zero", inst, pick(&|&(l, _, mu, z)| l == (mu && z)), || "linearity disagrees with the μ-characterization".into());
        checks.holds("family/linear-implies-additive", inst, pick(&|&(l, a, _, _)| !l || a), || "linear but not additive".into());
        checks.holds("family/generated-kind-detected", inst, pick(&|&(l, ..)| l == (i % 2 == 0)), || "generator kind misclassified".into());

        // Differential linearity for maps between canonical objects.
        let (ka, kb) = (rng.random_range(1..=dims), rng.random_range(1..=dims));
        let h: PolyMap<C> = if i % 2 == 0 {
            let rows = crate::random::random_matrix::<C, _>(rng, kb, ka, shape.coeff_bound);
            PolyMap::from_matrix(ka, &(0..ka).collect::<Vec<_>>(), &rows).expect("shape")
        } else {
            random_map(rng, ka, kb, &Shape { max_degree: shape.max_degree.max(2), ..*shape })
        };
        let (oa, ob) = (standard::<C>(0, ka, false), standard::<C>(0, kb, false));
        let inst = || format!("instance={i}, f={}", h.render());
        let equivalence = (|| -> Result<bool> {
            let mor = BundleMor::new(h.clone(), PolyMap::zero(0, 0), &oa, &ob)?;
            let linear = mor.is_linear(&oa, &ob)?;
            let pa = crate::bundle::diffobj_from_bundle(&oa)?.phat;
            let pb = crate::bundle::diffobj_from_bundle(&ob)?.phat;
            let differentially_linear = cdc::cdc_t(&h).compose(&pb)? == pa.compose(&h)?;
            Ok(linear == differentially_linear)
        })();
        checks.holds("differential-linearity/equivalent", inst, equivalence, || "bundle linearity and T(f)p̂' = p̂f disagree".into());
    }

    let b = standard::<C>(1, 1, false);
    let squaring = PolyMap::new(2, vec![Poly::var(2, 0).expect("in range"), Poly::var(2, 1).expect("in range").pow(2)]).expect("shape");
    let mor = BundleMor::new(squaring, PolyMap::identity(1), &b, &b).expect("over the identity");
    let inst = || "(x, a) ↦ (x, a²) on standard(1,1)".to_string();
    checks.holds("fibrewise-squaring/not-linear", inst, mor.is_linear(&b, &b).map(|l| !l), || "squaring reported linear".into());
    checks.holds("fibrewise-squaring/not-additive", inst, mor.is_additive(&b, &b).map(|a| !a), || "squaring reported additive".into());
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::sampler;
    use crate::report::{Params, Status};
    use crate::scalar::{Natural, Rational};

    fn run(name: &str, c: Checks) -> crate::report::Report {
        let r = c.finish(name, &Params::default(), Instant::now());
        assert!(r.success(), "{}", r.to_json());
        r
    }

    #[test]
    fn bundle_suite_small() {
        run("bundle", bundle_suite::<Rational>(&mut sampler(0), &Shape::default(), 2, 2, false));
        run("bundle", bundle_suite::<Natural>(&mut sampler(0), &Shape::default(), 1, 2, false));
    }

    #[test]
    fn corrupted_lambda_is_caught() {
        let r = bundle_suite::<Rational>(&mut sampler(0), &Shape::default(), 1, 1, true).finish("bundle", &Params::default(), Instant::now());
        assert_eq!(r.check("standard/lift-over-zeta/over").unwrap().status, Status::Fail);
    }

    #[test]
    fn bracket_interchange_linearity_small() {
        run("bracket-laws", bracket_laws::<Rational>(&mut sampler(3), &Shape::default(), 2, 6));
        run("bracket-laws", bracket_laws::<Natural>(&mut sampler(3), &Shape::default(), 2, 6));
        run("interchange", interchange::<Rational>(&mut sampler(3), &Shape::default(), 2, 6));
        run("interchange", interchange::<Natural>(&mut sampler(3), &Shape::default(), 2, 6));
        run("linearity", linearity::<Rational>(&mut sampler(3), &Shape::default(), 2, 6));
        run("linearity", linearity::<Natural>(&mut sampler(3), &Shape::default(), 2, 6));
    }
}
