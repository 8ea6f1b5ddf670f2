//! The simple fibration over polynomial maps: context-indexed maps
//! `(f: A → B, g: A×X → Y)`, their differential, and the fibre over a fixed
//! context with its partial-derivative tangent structure.
//!
//! Inside a fibre, payload coordinates play the role of object coordinates
//! and the context is passed through unchanged.

use std::marker::PhantomData;

use rand::Rng;

use crate::cartesian::CartesianDiff;
use crate::cdc;
use crate::error::{dim_mismatch, Error, Result};
use crate::model::TangentModel;
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::random::{random_map, random_point, Sampler, Shape};
use crate::report::{Comparable, Fault};
use crate::scalar::Semiring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleObj {
    pub context: usize,
    pub payload: usize,
}

impl SimpleObj {
    pub fn new(context: usize, payload: usize) -> Self {
        SimpleObj { context, payload }
    }
}

/// `(f, g)` with `f: A → B` and `g: A×X → Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleMor<C> {
    pub f: PolyMap<C>,
    pub g: PolyMap<C>,
}

impl<C: Semiring> SimpleMor<C> {
    pub fn new(f: PolyMap<C>, g: PolyMap<C>) -> Result<Self> {
        if g.dom() < f.dom() {
            return Err(dim_mismatch(format!(
                "payload map has {} inputs but the context alone has {}",
                g.dom(),
                f.dom()
            )));
        }
        Ok(SimpleMor { f, g })
    }

    pub fn dom(&self) -> SimpleObj {
        SimpleObj::new(self.f.dom(), self.g.dom() - self.f.dom())
    }

    pub fn cod(&self) -> SimpleObj {
        SimpleObj::new(self.f.cod(), self.g.cod())
    }

    /// `(1_A, π1)`.
    pub fn identity(obj: SimpleObj) -> Self {
        let n = obj.context + obj.payload;
        SimpleMor {
            f: PolyMap::identity(obj.context),
            g: PolyMap::proj(n, obj.context, n).expect("slice in range"),
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.f.dom() == self.f.cod() && self.f.is_identity()
    }
}

impl<C: Semiring> Comparable for SimpleMor<C> {
    fn render(&self) -> String {
        format!("({} | {})", Comparable::render(&self.f), Comparable::render(&self.g))
    }

    fn residual(&self, other: &Self) -> Option<String> {
        let rf = self.f.residual(&other.f)?;
        let rg = self.g.residual(&other.g)?;
        Some(format!("({rf} | {rg})"))
    }
}

/// `(f, g)(f′, g′) = (f f′, ⟨π0 f, g⟩ g′)`.
pub fn simple_compose<C: Semiring>(m1: &SimpleMor<C>, m2: &SimpleMor<C>) -> Result<SimpleMor<C>> {
    if m1.cod() != m2.dom() {
        return Err(Error::ObjectMismatch(format!("{:?} then {:?}", m1.cod(), m2.dom())));
    }
    let a = m1.f.dom();
    let ctx = PolyMap::proj(m1.g.dom(), 0, a)?.compose(&m1.f)?;
    Ok(SimpleMor { f: m1.f.compose(&m2.f)?, g: ctx.pair(&m1.g)?.compose(&m2.g)? })
}

/// `(a1, a2, x1, x2) ↦ (a1, x1, a2, x2)` for block widths `(a, a, x, x)`.
pub fn swap_middle<C: Semiring>(a: usize, x: usize) -> PolyMap<C> {
    let idx: Vec<usize> = (0..a).chain(2 * a..2 * a + x).chain(a..2 * a).chain(2 * a + x..2 * a + 2 * x).collect();
    PolyMap::select(2 * a + 2 * x, &idx).expect("indices in range")
}

/// `D(f, g) = (D f, ex D g)`; the domain object is `(A×A, X×X)`.
pub fn simple_d<C: Semiring>(m: &SimpleMor<C>) -> Result<SimpleMor<C>> {
    let SimpleObj { context, payload } = m.dom();
    let g = swap_middle(context, payload).compose(&cdc::cdc_d(&m.g))?;
    Ok(SimpleMor { f: cdc::cdc_d(&m.f), g })
}

/// The derivative of `g: A×X → Y` in the payload directions only, as a map
/// `(a, v, x) ↦ D g (0, v, a, x)`.
pub fn vertical_derivative<C: Semiring>(context: usize, g: &PolyMap<C>) -> Result<PolyMap<C>> {
    let x = g
        .dom()
        .checked_sub(context)
        .ok_or_else(|| dim_mismatch(format!("context {context} exceeds map domain {}", g.dom())))?;
    let n = context + 2 * x;
    let var = |i| Poly::var(n, i).expect("in range");
    let mut comps: Vec<Poly<C>> = (0..context).map(|_| Poly::zero(n)).collect();
    comps.extend((context..context + x).map(var));
    comps.extend((0..context).map(var));
    comps.extend((context + x..n).map(var));
    PolyMap::new(n, comps)?.compose(&cdc::cdc_d(g))
}

/// The fibre tangent functor on `g: A×X → Y`: a map `A×(X×X) → Y×Y` with
/// payload layout `(v, x)`.
pub fn vertical_t_map<C: Semiring>(context: usize, g: &PolyMap<C>) -> Result<PolyMap<C>> {
    let tangent = vertical_derivative(context, g)?;
    let x = g.dom() - context;
    let point_idx: Vec<usize> = (0..context).chain(context + x..context + 2 * x).collect();
    let point = PolyMap::select(context + 2 * x, &point_idx)?.compose(g)?;
    tangent.pair(&point)
}

/// `T` on a vertical morphism `(1, g)`.
pub fn vertical_t<C: Semiring>(m: &SimpleMor<C>) -> Result<SimpleMor<C>> {
    if !m.is_vertical() {
        return Err(Error::NotVertical(format!("context map {}", m.f)));
    }
    Ok(SimpleMor { f: m.f.clone(), g: vertical_t_map(m.f.dom(), &m.g)? })
}

/// The simple fibration as a Cartesian differential category.
#[derive(Clone, Copy, Debug, Default)]
pub struct SimpleFibration<C> {
    /// Upper bound on generated context dimensions.
    pub max_context: usize,
    _scalar: PhantomData<C>,
}

impl<C: Semiring> SimpleFibration<C> {
    pub fn new(max_context: usize) -> Self {
        SimpleFibration { max_context, _scalar: PhantomData }
    }
}

impl<C: Semiring> CartesianDiff for SimpleFibration<C> {
    type Obj = SimpleObj;
    type Mor = SimpleMor<C>;

    fn describe(&self) -> String {
        format!("simple fibration over {}", C::MODE)
    }

    fn terminal(&self) -> SimpleObj {
        SimpleObj::new(0, 0)
    }

    fn product(&self, a: &SimpleObj, b: &SimpleObj) -> SimpleObj {
        SimpleObj::new(a.context + b.context, a.payload + b.payload)
    }

    fn dom(&self, f: &SimpleMor<C>) -> SimpleObj {
        f.dom()
    }

    fn cod(&self, f: &SimpleMor<C>) -> SimpleObj {
        f.cod()
    }

    fn compose(&self, f: &SimpleMor<C>, g: &SimpleMor<C>) -> Result<SimpleMor<C>> {
        simple_compose(f, g)
    }

    fn identity(&self, a: &SimpleObj) -> SimpleMor<C> {
        SimpleMor::identity(*a)
    }

    fn pair(&self, f: &SimpleMor<C>, g: &SimpleMor<C>) -> Result<SimpleMor<C>> {
        if f.dom() != g.dom() {
            return Err(Error::ObjectMismatch(format!("pairing maps out of {:?} and {:?}", f.dom(), g.dom())));
        }
        Ok(SimpleMor { f: f.f.pair(&g.f)?, g: f.g.pair(&g.g)? })
    }

    fn proj0(&self, a: &SimpleObj, b: &SimpleObj) -> SimpleMor<C> {
        let ctx = a.context + b.context;
        let n = ctx + a.payload + b.payload;
        SimpleMor {
            f: PolyMap::proj(ctx, 0, a.context).expect("slice in range"),
            g: PolyMap::proj(n, ctx, ctx + a.payload).expect("slice in range"),
        }
    }

    fn proj1(&self, a: &SimpleObj, b: &SimpleObj) -> SimpleMor<C> {
        let ctx = a.context + b.context;
        let n = ctx + a.payload + b.payload;
        SimpleMor {
            f: PolyMap::proj(ctx, a.context, ctx).expect("slice in range"),
            g: PolyMap::proj(n, ctx + a.payload, n).expect("slice in range"),
        }
    }

    fn add(&self, f: &SimpleMor<C>, g: &SimpleMor<C>) -> Result<SimpleMor<C>> {
        Ok(SimpleMor { f: f.f.add(&g.f)?, g: f.g.add(&g.g)? })
    }

    fn zero(&self, dom: &SimpleObj, cod: &SimpleObj) -> SimpleMor<C> {
        SimpleMor {
            f: PolyMap::zero(dom.context, cod.context),
            g: PolyMap::zero(dom.context + dom.payload, cod.payload),
        }
    }

    fn diff(&self, f: &SimpleMor<C>) -> Result<SimpleMor<C>> {
        simple_d(f)
    }

    fn random_obj(&self, rng: &mut Sampler, max_dim: usize) -> SimpleObj {
        let context = rng.random_range(0..=self.max_context.min(max_dim));
        let payload = rng.random_range(1..=max_dim.max(1));
        SimpleObj::new(context, payload)
    }

    fn random_mor(&self, rng: &mut Sampler, dom: &SimpleObj, cod: &SimpleObj, shape: &Shape) -> SimpleMor<C> {
        SimpleMor {
            f: random_map(rng, dom.context, cod.context, shape),
            g: random_map(rng, dom.context + dom.payload, cod.payload, shape),
        }
    }

    fn random_point(&self, rng: &mut Sampler, a: &SimpleObj, bound: u64) -> SimpleMor<C> {
        SimpleMor { f: random_point(rng, 0, a.context, bound), g: random_point(rng, 0, a.payload, bound) }
    }
}

/// A vertical morphism in the fibre over a fixed context: `g: A×X → Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct VMor<C> {
    pub context: usize,
    pub g: PolyMap<C>,
}

impl<C: Semiring> Comparable for VMor<C> {
    fn render(&self) -> String {
        format!("[context {}] {}", self.context, Comparable::render(&self.g))
    }

    fn residual(&self, other: &Self) -> Option<String> {
        self.g.residual(&other.g)
    }
}

/// The fibre over a context of dimension `context`, as a tangent model whose
/// objects are payload dimensions.
#[derive(Clone, Debug)]
pub struct FibreModel<C> {
    pub context: usize,
    pub fault: Option<Fault>,
    _scalar: PhantomData<C>,
}

impl<C: Semiring> FibreModel<C> {
    pub fn new(context: usize) -> Self {
        FibreModel { context, fault: None, _scalar: PhantomData }
    }

    pub fn with_fault(context: usize, fault: Option<Fault>) -> Self {
        FibreModel { context, fault, _scalar: PhantomData }
    }

    fn check(&self, f: &VMor<C>) -> Result<()> {
        if f.context != self.context || f.g.dom() < self.context {
            return Err(Error::ObjectMismatch(format!(
                "morphism over context {} in the fibre over {}",
                f.context, self.context
            )));
        }
        Ok(())
    }
}

impl<C: Semiring> TangentModel for FibreModel<C> {
    type Scalar = C;
    type Mor = VMor<C>;

    fn describe(&self) -> String {
        format!("fibre over context dim {} of the simple fibration over {}", self.context, C::MODE)
    }

    fn dom(&self, f: &VMor<C>) -> usize {
        f.g.dom() - f.context
    }

    fn cod(&self, f: &VMor<C>) -> usize {
        f.g.cod()
    }

    /// `⟨π0, g⟩ g′`.
    fn compose(&self, f: &VMor<C>, g: &VMor<C>) -> Result<VMor<C>> {
        self.check(f)?;
        self.check(g)?;
        let ctx = PolyMap::proj(f.g.dom(), 0, self.context)?;
        Ok(VMor { context: self.context, g: ctx.pair(&f.g)?.compose(&g.g)? })
    }

    fn pair(&self, parts: &[&VMor<C>]) -> Result<VMor<C>> {
        for p in parts {
            self.check(p)?;
        }
        let gs: Vec<&PolyMap<C>> = parts.iter().map(|p| &p.g).collect();
        Ok(VMor { context: self.context, g: PolyMap::concat(&gs)? })
    }

    fn tangent_map(&self, f: &VMor<C>) -> Result<VMor<C>> {
        self.check(f)?;
        Ok(VMor { context: self.context, g: vertical_t_map(self.context, &f.g)? })
    }

    fn structural(&self, f: PolyMap<C>) -> VMor<C> {
        let n = self.context + f.dom();
        let payload = PolyMap::proj(n, self.context, n).expect("slice in range");
        VMor { context: self.context, g: payload.compose(&f).expect("dimensions agree") }
    }

    fn as_selection(&self, f: &VMor<C>) -> Option<Vec<usize>> {
        let sel = f.g.as_selection()?;
        sel.iter().all(|&i| i >= self.context).then(|| sel.iter().map(|i| i - self.context).collect())
    }

    fn random_mor(&self, rng: &mut Sampler, dom: usize, cod: usize, shape: &Shape) -> VMor<C> {
        VMor { context: self.context, g: random_map(rng, self.context + dom, cod, shape) }
    }

    fn fault(&self) -> Option<Fault> {
        self.fault
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polymap;
    use crate::scalar::Rational;

    fn pm(s: &str, dom: usize) -> PolyMap<Rational> {
        parse_polymap(s, Some(dom)).unwrap()
    }

    #[test]
    fn concrete_composite() {
        let m1 = SimpleMor::new(pm("x0", 1), pm("x0*x1", 2)).unwrap();
        let m2 = SimpleMor::new(pm("x0^2", 1), pm("x0 + x1", 2)).unwrap();
        let c = simple_compose(&m1, &m2).unwrap();
        assert_eq!(c.f, pm("x0^2", 1));
        assert_eq!(c.g, pm("x0 + x0*x1", 2));
    }

    #[test]
    fn identity_is_unital() {
        let m = SimpleMor::new(pm("x0^2; x0", 1), pm("x0*x1 + x2", 3)).unwrap();
        assert_eq!(simple_compose(&m, &SimpleMor::identity(m.cod())).unwrap(), m);
        assert_eq!(simple_compose(&SimpleMor::identity(m.dom()), &m).unwrap(), m);
        let bad = SimpleMor::new(pm("x0", 1), pm("x0", 1)).unwrap();
        assert!(matches!(simple_compose(&m, &bad), Err(Error::ObjectMismatch(_))));
    }

    #[test]
    fn differential_of_product_map() {
        // g(a, x) = a·x; with layout (da, a, dx, x) the differential is a·dx + da·x.
        let m = SimpleMor::new(pm("x0", 1), pm("x0*x1", 2)).unwrap();
        let d = simple_d(&m).unwrap();
        assert_eq!(d.g, pm("x1*x2 + x0*x3", 4));
        assert_eq!(d.dom(), SimpleObj::new(2, 2));
    }

    #[test]
    fn differential_of_identity() {
        let d = simple_d(&SimpleMor::<Rational>::identity(SimpleObj::new(1, 1))).unwrap();
        assert_eq!(d.f, pm("x0", 2));
        assert_eq!(d.g, pm("x2", 4));
    }

    #[test]
    fn vertical_derivative_freezes_context() {
        // (a, v, x)
        assert_eq!(vertical_derivative(1, &pm("x0*x1", 2)).unwrap(), pm("x0*x1", 3));
        assert!(vertical_derivative(1, &pm("x0^2", 2)).unwrap().components()[0].is_zero());
        assert_eq!(vertical_derivative(1, &pm("x1^2", 2)).unwrap(), pm("2*x1*x2", 3));
    }

    #[test]
    fn vertical_t_needs_identity_context() {
        let m = SimpleMor::new(pm("x0^2", 1), pm("x1", 2)).unwrap();
        assert!(matches!(vertical_t(&m), Err(Error::NotVertical(_))));
        let v = SimpleMor::new(pm("x0", 1), pm("x0*x1", 2)).unwrap();
        let t = vertical_t(&v).unwrap();
        assert_eq!(t.g, pm("x0*x1; x0*x2", 3));
    }

    #[test]
    fn empty_context_matches_tangent_functor() {
        let g = pm("x0^2*x1; x1 + 3", 2);
        assert_eq!(vertical_t_map(0, &g).unwrap(), cdc::cdc_t(&g));
    }
}
