//! Tangent-structure axioms and monad laws, generic over a [`TangentModel`].

use crate::error::Result;
use crate::model::{compose_all, monad_mult, tangent_iter, tn_map, universality, TangentModel, TnObject};
use crate::random::{Sampler, Shape};
use crate::report::{Checks, Comparable};

use rand::Rng;

/// Structural checks at object `m` (no random morphisms involved).
pub fn structural_checks<M: TangentModel>(model: &M, m: usize, checks: &mut Checks) {
    let inst = || format!("{}, dim={m}", model.describe());
    let c = |f: &M::Mor, g: &M::Mor| model.compose(f, g);
    let t = |f: &M::Mor| model.tangent_map(f);

    let t2 = TnObject::new(m, 2);
    let t3 = TnObject::new(m, 3);
    let id = model.identity(m);
    let id_t = model.identity(2 * m);
    let id_tt = model.identity(4 * m);
    let p = model.p(m);
    let zero = model.zero(m);
    let plus = model.plus(m);
    let lift = model.lift(m);
    let flip = model.flip(m);

    checks.eq("functor/identity", inst, t(&id), Ok(id_t.clone()));

    // (p, +, 0) is an additive bundle.
    let pi0 = t2.leg(model, 0);
    let pi1 = t2.leg(model, 1);
    if let (Ok(pi0), Ok(pi1)) = (&pi0, &pi1) {
        checks.eq("additive-bundle/plus-over-base", inst, c(&plus, &p), c(pi0, &p));
        checks.eq("additive-bundle/legs-share-base", inst, c(pi0, &p), c(pi1, &p));
        checks.eq("additive-bundle/zero-section", inst, c(&zero, &p), Ok(id.clone()));
        let unit = c(&p, &zero).and_then(|pz| t2.pair_into(model, &[&id_t, &pz])).and_then(|u| c(&u, &plus));
        checks.eq("additive-bundle/unit", inst, unit, Ok(id_t.clone()));
        let swapped = t2.pair_into(model, &[pi1, pi0]).and_then(|s| c(&s, &plus));
        checks.eq("additive-bundle/commutativity", inst, swapped, Ok(plus.clone()));
        let assoc = || -> Result<(M::Mor, M::Mor)> {
            let q: Vec<M::Mor> = (0..3).map(|i| t3.leg(model, i)).collect::<Result<_>>()?;
            let q01 = c(&t2.pair_into(model, &[&q[0], &q[1]])?, &plus)?;
            let left = c(&t2.pair_into(model, &[&q01, &q[2]])?, &plus)?;
            let q12 = c(&t2.pair_into(model, &[&q[1], &q[2]])?, &plus)?;
            let right = c(&t2.pair_into(model, &[&q[0], &q12])?, &plus)?;
            Ok((left, right))
        };
        match assoc() {
            Ok((l, r)) => checks.eq("additive-bundle/associativity", inst, Ok(l), Ok(r)),
            Err(e) => checks.eq::<M::Mor>("additive-bundle/associativity", inst, Err(e.clone()), Err(e)),
        };

        // (ℓ, 0): (p, +, 0) → (T(p), T(+), T(0)) is an additive bundle morphism.
        let t_p = t(&p);
        checks.eq("lift-morphism/over-zero", inst, t_p.as_ref().map_err(Clone::clone).and_then(|tp| c(&lift, tp)), c(&p, &zero));
        let lift2 = c(pi0, &lift)
            .and_then(|a| Ok((a, c(pi1, &lift)?)))
            .and_then(|(a, b)| t2.tangent().pair_into(model, &[&a, &b]));
        let lhs = lift2.and_then(|l2| c(&l2, &t(&plus)?));
        checks.eq("lift-morphism/preserves-plus", inst, lhs, c(&plus, &lift));
        checks.eq("lift-morphism/preserves-zero", inst, c(&zero, &lift), t(&zero).and_then(|tz| c(&zero, &tz)));

        // (c, 1): (T(p), T(+), T(0)) → (p_T, +_T, 0_T) is an additive bundle morphism.
        let p_t = model.p(2 * m);
        checks.eq("flip-morphism/over-identity", inst, c(&flip, &p_t), t_p.clone());
        let flip2 = || -> Result<M::Mor> {
            let tt2 = t2.tangent();
            let a = c(&tt2.leg(model, 0)?, &flip)?;
            let b = c(&tt2.leg(model, 1)?, &flip)?;
            TnObject::new(2 * m, 2).pair_into(model, &[&a, &b])
        };
        let lhs = flip2().and_then(|f2| c(&f2, &model.plus(2 * m)));
        checks.eq("flip-morphism/preserves-plus", inst, lhs, t(&plus).and_then(|tp| c(&tp, &flip)));
        checks.eq(
            "flip-morphism/preserves-zero",
            inst,
            t(&zero).and_then(|tz| c(&tz, &flip)),
            Ok(model.zero(2 * m)),
        );
    }

    // Coherences of ℓ and c.
    checks.eq("coherence/flip-involution", inst, c(&flip, &flip), Ok(id_tt));
    checks.eq("coherence/lift-flip", inst, c(&lift, &flip), Ok(lift.clone()));
    let lift_t = model.lift(2 * m);
    let flip_t = model.flip(2 * m);
    checks.eq(
        "coherence/lift-coassociative",
        inst,
        t(&lift).and_then(|tl| c(&lift, &tl)),
        c(&lift, &lift_t),
    );
    let t_flip = t(&flip);
    let hex = || -> Result<(M::Mor, M::Mor)> {
        let tc = t_flip.clone()?;
        Ok((compose_all(model, &[&tc, &flip_t, &tc])?, compose_all(model, &[&flip_t, &tc, &flip_t])?))
    };
    match hex() {
        Ok((l, r)) => checks.eq("coherence/flip-braid", inst, Ok(l), Ok(r)),
        Err(e) => checks.eq::<M::Mor>("coherence/flip-braid", inst, Err(e.clone()), Err(e)),
    };
    let square = || -> Result<(M::Mor, M::Mor)> {
        let tc = t_flip.clone()?;
        Ok((compose_all(model, &[&lift_t, &tc, &flip_t])?, c(&flip, &t(&lift)?)?))
    };
    match square() {
        Ok((l, r)) => checks.eq("coherence/lift-flip-square", inst, Ok(l), Ok(r)),
        Err(e) => checks.eq::<M::Mor>("coherence/lift-flip-square", inst, Err(e.clone()), Err(e)),
    };

    universality_checks(model, m, checks);
}

/// The universality square of `v`, certified by a witness, and its images
/// under `T` and `T²`.
pub fn universality_checks<M: TangentModel>(model: &M, m: usize, checks: &mut Checks) {
    let inst = || format!("{}, dim={m}", model.describe());
    let u = match universality(model, m) {
        Ok(u) => u,
        Err(e) => {
            checks.ok::<()>("universality/witness-exists", inst, &Err(e));
            return;
        }
    };
    let t2 = TnObject::new(m, 2);
    let square_lhs = model.tangent_map(&model.p(m)).and_then(|tp| model.compose(&u.v, &tp));
    let square_rhs = t2
        .leg(model, 0)
        .and_then(|l| compose_all(model, &[&l, &model.p(m), &model.zero(m)]));
    checks.eq("universality/square-commutes", inst, square_lhs, square_rhs);
    let rho = match &u.witness {
        Some(r) => r.clone(),
        None => {
            checks.holds("universality/witness-exists", inst, Ok(false), || {
                format!("comparison map {} is not invertible by a coordinate witness", u.comparison.render())
            });
            return;
        }
    };
    checks.holds("universality/witness-exists", inst, Ok(true), String::new);
    for level in 0..=2usize {
        let suffix = match level {
            0 => String::new(),
            1 => "-under-T".to_string(),
            _ => "-under-T2".to_string(),
        };
        let kappa = tangent_iter(model, &u.comparison, level);
        let rho_n = tangent_iter(model, &rho, level);
        let (kappa, rho_n) = match (kappa, rho_n) {
            (Ok(k), Ok(r)) => (k, r),
            (Err(e), _) | (_, Err(e)) => {
                checks.ok::<()>(&format!("universality/witness{suffix}"), inst, &Err(e));
                continue;
            }
        };
        let scale = 1usize << level;
        checks.eq(
            &format!("universality/comparison-then-witness{suffix}"),
            inst,
            model.compose(&kappa, &rho_n),
            Ok(model.identity(t2.carrier * scale)),
        );
        checks.eq(
            &format!("universality/witness-then-comparison{suffix}"),
            inst,
            model.compose(&rho_n, &kappa),
            Ok(model.identity(u.pullback_dim * scale)),
        );
    }
}

/// Naturality and functoriality against one random morphism `f: m → n`
/// and a second `g: n → k`.
pub fn naturality_checks<M: TangentModel>(
    model: &M,
    rng: &mut Sampler,
    shape: &Shape,
    max_dim: usize,
    instance: usize,
    checks: &mut Checks,
) {
    let m = 1 + instance % max_dim;
    let n = rng.random_range(1..=max_dim);
    let k = rng.random_range(1..=max_dim);
    let f = model.random_mor(rng, m, n, shape);
    let g = model.random_mor(rng, n, k, shape);
    let inst = || format!("{}, instance={instance}, f={}, g={}", model.describe(), f.render(), g.render());
    let c = |a: &M::Mor, b: &M::Mor| model.compose(a, b);
    let t = |a: &M::Mor| model.tangent_map(a);

    let tf = match t(&f) {
        Ok(tf) => tf,
        Err(e) => {
            checks.ok::<()>("functor/composition", inst, &Err(e));
            return;
        }
    };
    checks.eq(
        "functor/composition",
        inst,
        c(&f, &g).and_then(|fg| t(&fg)),
        t(&g).and_then(|tg| c(&tf, &tg)),
    );
    checks.eq("naturality/p", inst, c(&tf, &model.p(n)), c(&model.p(m), &f));
    checks.eq("naturality/zero", inst, c(&f, &model.zero(n)), c(&model.zero(m), &tf));
    checks.eq(
        "naturality/plus",
        inst,
        tn_map(model, &f, 2).and_then(|t2f| c(&t2f, &model.plus(n))),
        c(&model.plus(m), &tf),
    );
    let ttf = t(&tf);
    checks.eq(
        "naturality/lift",
        inst,
        c(&tf, &model.lift(n)),
        ttf.clone().and_then(|ttf| c(&model.lift(m), &ttf)),
    );
    checks.eq(
        "naturality/flip",
        inst,
        ttf.clone().and_then(|ttf| c(&ttf, &model.flip(n))),
        ttf.and_then(|ttf| c(&model.flip(m), &ttf)),
    );
}

/// All tangent-structure checks for a model.
pub fn tangent_axioms<M: TangentModel>(model: &M, rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for m in 1..=max_dim {
        structural_checks(model, m, &mut checks);
    }
    for i in 0..instances {
        naturality_checks(model, rng, shape, max_dim, i, &mut checks);
    }
    checks
}

/// Monad laws for `(T, 0, ⟨p_T, T(p)⟩ +)`.
pub fn monad_laws<M: TangentModel>(model: &M, rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    let c = |a: &M::Mor, b: &M::Mor| model.compose(a, b);
    let t = |a: &M::Mor| model.tangent_map(a);
    for m in 1..=max_dim {
        let inst = || format!("{}, dim={m}", model.describe());
        let mu = match monad_mult(model, m) {
            Ok(mu) => mu,
            Err(e) => {
                checks.ok::<()>("monad/multiplication", inst, &Err(e));
                continue;
            }
        };
        checks.eq("monad/left-unit", inst, c(&model.zero(2 * m), &mu), Ok(model.identity(2 * m)));
        checks.eq(
            "monad/right-unit",
            inst,
            t(&model.zero(m)).and_then(|tz| c(&tz, &mu)),
            Ok(model.identity(2 * m)),
        );
        checks.eq(
            "monad/unit-composite",
            inst,
            t(&model.zero(m)).and_then(|tz| compose_all(model, &[&model.zero(m), &tz, &mu])),
            Ok(model.zero(m)),
        );
        checks.eq(
            "monad/associativity",
            inst,
            monad_mult(model, 2 * m).and_then(|mu_t| c(&mu_t, &mu)),
            t(&mu).and_then(|tmu| c(&tmu, &mu)),
        );
        let p = model.p(m);
        checks.eq("monad/over-base-point", inst, c(&mu, &p), c(&model.p(2 * m), &p));
        checks.eq(
            "monad/over-tangent-projection",
            inst,
            c(&mu, &p),
            t(&p).and_then(|tp| c(&tp, &p)),
        );
    }
    for i in 0..instances {
        let m = 1 + i % max_dim;
        let n = rng.random_range(1..=max_dim);
        let f = model.random_mor(rng, m, n, shape);
        let inst = || format!("{}, instance={i}, f={}", model.describe(), f.render());
        let lhs = tangent_iter(model, &f, 2).and_then(|ttf| c(&ttf, &monad_mult(model, n)?));
        let rhs = monad_mult(model, m).and_then(|mu| c(&mu, &t(&f)?));
        checks.eq("monad/naturality", inst, lhs, rhs);
    }
    checks
}
