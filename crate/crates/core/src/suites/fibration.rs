//! Checks on the simple fibration and its fibres.

use crate::cartesian::CartesianDiff;
use crate::cdc;
use crate::error::Result;
use crate::fibration::{simple_compose, simple_d, vertical_derivative, vertical_t, FibreModel, SimpleFibration, SimpleMor, SimpleObj};
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::random::{random_map, Sampler, Shape};
use crate::report::{Checks, Comparable, Fault};
use crate::scalar::Semiring;
use crate::suites::cdc::cd_axioms;
use crate::suites::tangent::tangent_axioms;

use rand::Rng;

/// Largest context dimension exercised.
pub const MAX_CONTEXT: usize = 2;

fn random_simple<C: Semiring>(rng: &mut Sampler, dom: SimpleObj, cod: SimpleObj, shape: &Shape) -> SimpleMor<C> {
    SimpleFibration::<C>::new(MAX_CONTEXT).random_mor(rng, &dom, &cod, shape)
}

fn random_obj(rng: &mut Sampler, max_dim: usize) -> SimpleObj {
    SimpleObj::new(rng.random_range(0..=MAX_CONTEXT.min(max_dim)), rng.random_range(1..=max_dim))
}

pub fn composition_laws<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for i in 0..instances {
        let objs: Vec<SimpleObj> = (0..4).map(|_| random_obj(rng, max_dim)).collect();
        let m1 = random_simple::<C>(rng, objs[0], objs[1], shape);
        let m2 = random_simple::<C>(rng, objs[1], objs[2], shape);
        let m3 = random_simple::<C>(rng, objs[2], objs[3], shape);
        let inst = || format!("instance={i}, m1={}, m2={}, m3={}", m1.render(), m2.render(), m3.render());
        let lhs = simple_compose(&m1, &m2).and_then(|m| simple_compose(&m, &m3));
        let rhs = simple_compose(&m2, &m3).and_then(|m| simple_compose(&m1, &m));
        checks.eq("composition/associative", inst, lhs, rhs);
        checks.eq("composition/left-unit", inst, simple_compose(&SimpleMor::identity(objs[0]), &m1), Ok(m1.clone()));
        checks.eq("composition/right-unit", inst, simple_compose(&m1, &SimpleMor::identity(objs[1])), Ok(m1.clone()));
    }
    checks
}

/// `Σ_j ∂g/∂x_j (a, x) · v_j` on `(a, v, x)`, straight from partial derivatives.
fn payload_partials<C: Semiring>(context: usize, g: &PolyMap<C>) -> Result<PolyMap<C>> {
    let x = g.dom() - context;
    let n = context + 2 * x;
    let at_point: Vec<usize> = (0..context).chain(context + x..n).collect();
    let comps = g
        .components()
        .iter()
        .map(|gj| {
            let mut acc = Poly::zero(n);
            for j in 0..x {
                let d = gj.partial_derivative(context + j)?.reindex(n, &at_point)?;
                acc = acc.add(&d.mul(&Poly::var(n, context + j)?)?)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(n, comps)
}

pub fn vertical_consistency<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for i in 0..instances {
        let ctx = rng.random_range(0..=MAX_CONTEXT.min(max_dim));
        let x = rng.random_range(1..=max_dim);
        let y = rng.random_range(1..=max_dim);
        let z = rng.random_range(1..=max_dim);
        let g: PolyMap<C> = random_map(rng, ctx + x, y, shape);
        let h: PolyMap<C> = random_map(rng, ctx + y, z, shape);
        let inst = || format!("instance={i}, context={ctx}, g={}, h={}", Comparable::render(&g), Comparable::render(&h));
        let vd = vertical_derivative(ctx, &g);

        checks.eq("vertical/matches-partial-derivatives", inst, vd.clone(), payload_partials(ctx, &g));

        // (a, v, x) ↦ (0, a, v, x) in the layout (da, a, dx, x) of the simple differential.
        let through_simple = (|| -> Result<PolyMap<C>> {
            let n = ctx + 2 * x;
            let mut idx_comps = vec![Poly::zero(n); ctx];
            idx_comps.extend((0..n).map(|k| Poly::var(n, k).expect("in range")));
            let inj = PolyMap::new(n, idx_comps)?;
            let m = SimpleMor::new(PolyMap::identity(ctx), g.clone())?;
            inj.compose(&simple_d(&m)?.g)
        })();
        checks.eq("vertical/matches-simple-differential", inst, vd, through_simple);

        let v1 = SimpleMor::new(PolyMap::identity(ctx), g.clone());
        let v2 = SimpleMor::new(PolyMap::identity(ctx), h.clone());
        let lhs = v1.clone().and_then(|a| simple_compose(&a, &v2.clone()?)).and_then(|m| vertical_t(&m));
        let rhs = (|| -> Result<SimpleMor<C>> { simple_compose(&vertical_t(&v1.clone()?)?, &vertical_t(&v2.clone()?)?) })();
        checks.eq("vertical/functorial", inst, lhs, rhs);

        let g0: PolyMap<C> = random_map(rng, x, y, shape);
        let inst0 = || format!("instance={i}, g={}", Comparable::render(&g0));
        checks.eq("vertical/empty-context-is-tangent", inst0, crate::fibration::vertical_t_map(0, &g0), Ok(cdc::cdc_t(&g0)));
    }
    checks
}

/// Context dimensions exercised by the fibre tangent-axioms checks.
pub fn contexts(max_dim: usize, only: Option<usize>) -> Vec<usize> {
    match only {
        Some(c) => vec![c],
        None => (0..=MAX_CONTEXT.min(max_dim)).collect(),
    }
}

pub struct FibrationParams {
    pub max_dim: usize,
    pub instances: usize,
    pub context: Option<usize>,
    pub fault: Option<Fault>,
}

pub fn fibration_suite<C: Semiring>(rng: &mut Sampler, shape: &Shape, p: &FibrationParams) -> Checks {
    let mut checks = Checks::new();
    let max_dim = p.max_dim.min(2);
    checks.merge("", composition_laws::<C>(rng, shape, p.max_dim, p.instances));
    checks.merge("simple-differential", cd_axioms(&SimpleFibration::<C>::new(MAX_CONTEXT), rng, shape, max_dim, p.instances));
    for ctx in contexts(p.max_dim, p.context) {
        let model = FibreModel::<C>::with_fault(ctx, p.fault);
        checks.merge(&format!("fibre-context-{ctx}"), tangent_axioms(&model, rng, shape, max_dim, p.instances));
    }
    checks.merge("", vertical_consistency::<C>(rng, shape, p.max_dim, p.instances));
    checks
}
