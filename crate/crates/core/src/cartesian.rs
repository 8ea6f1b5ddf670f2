//! The Cartesian differential contract: a left-additive category with
//! finite products and a differentiation combinator `D: (X → Y) ↦ (X×X → Y)`.
//!
//! The domain of `D f` is `dom(f) × dom(f)` with the direction first.

use std::fmt::Debug;

use crate::cdc;
use crate::error::{dim_mismatch, Result};
use crate::polymap::PolyMap;
use crate::random::{random_map, Sampler, Shape};
use crate::report::Comparable;
use crate::scalar::Semiring;

use rand::Rng;

pub trait CartesianDiff: Sync {
    type Obj: Clone + Debug + PartialEq;
    type Mor: Comparable + Clone + Debug;

    fn describe(&self) -> String;
    fn terminal(&self) -> Self::Obj;
    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    /// `f` then `g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn pair(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn proj0(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    fn proj1(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn zero(&self, dom: &Self::Obj, cod: &Self::Obj) -> Self::Mor;
    fn diff(&self, f: &Self::Mor) -> Result<Self::Mor>;

    fn random_obj(&self, rng: &mut Sampler, max_dim: usize) -> Self::Obj;
    fn random_mor(&self, rng: &mut Sampler, dom: &Self::Obj, cod: &Self::Obj, shape: &Shape) -> Self::Mor;
    /// A random global element `1 → a`.
    fn random_point(&self, rng: &mut Sampler, a: &Self::Obj, bound: u64) -> Self::Mor;

    /// Right-nested product `o_0 × (o_1 × (… × o_n))`.
    fn product_n(&self, objs: &[Self::Obj]) -> Self::Obj {
        match objs {
            [] => self.terminal(),
            [o] => o.clone(),
            [o, rest @ ..] => self.product(o, &self.product_n(rest)),
        }
    }

    /// The `i`-th projection out of [`CartesianDiff::product_n`].
    fn proj_n(&self, objs: &[Self::Obj], i: usize) -> Result<Self::Mor> {
        match objs {
            [] => Err(dim_mismatch("projection out of an empty product")),
            [o] if i == 0 => Ok(self.identity(o)),
            [_] => Err(dim_mismatch("projection index out of range")),
            [o, rest @ ..] => {
                let tail = self.product_n(rest);
                if i == 0 {
                    Ok(self.proj0(o, &tail))
                } else {
                    self.compose(&self.proj1(o, &tail), &self.proj_n(rest, i - 1)?)
                }
            }
        }
    }
}

/// The polynomial model with a pluggable differentiation combinator.
#[derive(Clone, Copy)]
pub struct PolyCartesian<C: Semiring> {
    label: &'static str,
    differential: fn(&PolyMap<C>) -> Result<PolyMap<C>>,
}

impl<C: Semiring> PolyCartesian<C> {
    /// Formal partial derivatives.
    pub fn symbolic() -> Self {
        PolyCartesian { label: "symbolic differential", differential: |f| Ok(cdc::cdc_d(f)) }
    }

    pub fn with_differential(label: &'static str, differential: fn(&PolyMap<C>) -> Result<PolyMap<C>>) -> Self {
        PolyCartesian { label, differential }
    }
}

impl<C: Semiring> CartesianDiff for PolyCartesian<C> {
    type Obj = usize;
    type Mor = PolyMap<C>;

    fn describe(&self) -> String {
        format!("polynomial maps over {}, {}", C::MODE, self.label)
    }

    fn terminal(&self) -> usize {
        0
    }

    fn product(&self, a: &usize, b: &usize) -> usize {
        a + b
    }

    fn dom(&self, f: &PolyMap<C>) -> usize {
        f.dom()
    }

    fn cod(&self, f: &PolyMap<C>) -> usize {
        f.cod()
    }

    fn compose(&self, f: &PolyMap<C>, g: &PolyMap<C>) -> Result<PolyMap<C>> {
        f.compose(g)
    }

    fn identity(&self, a: &usize) -> PolyMap<C> {
        PolyMap::identity(*a)
    }

    fn pair(&self, f: &PolyMap<C>, g: &PolyMap<C>) -> Result<PolyMap<C>> {
        f.pair(g)
    }

    fn proj0(&self, a: &usize, b: &usize) -> PolyMap<C> {
        PolyMap::proj(a + b, 0, *a).expect("slice in range")
    }

    fn proj1(&self, a: &usize, b: &usize) -> PolyMap<C> {
        PolyMap::proj(a + b, *a, a + b).expect("slice in range")
    }

    fn add(&self, f: &PolyMap<C>, g: &PolyMap<C>) -> Result<PolyMap<C>> {
        f.add(g)
    }

    fn zero(&self, dom: &usize, cod: &usize) -> PolyMap<C> {
        PolyMap::zero(*dom, *cod)
    }

    fn diff(&self, f: &PolyMap<C>) -> Result<PolyMap<C>> {
        (self.differential)(f)
    }

    fn random_obj(&self, rng: &mut Sampler, max_dim: usize) -> usize {
        rng.random_range(1..=max_dim.max(1))
    }

    fn random_mor(&self, rng: &mut Sampler, dom: &usize, cod: &usize, shape: &Shape) -> PolyMap<C> {
        random_map(rng, *dom, *cod, shape)
    }

    fn random_point(&self, rng: &mut Sampler, a: &usize, bound: u64) -> PolyMap<C> {
        crate::random::random_point(rng, 0, *a, bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn nested_projections_pick_blocks() {
        let k = PolyCartesian::<Rational>::symbolic();
        let objs = [1, 2, 1];
        assert_eq!(k.product_n(&objs), 4);
        assert_eq!(k.proj_n(&objs, 0).unwrap(), PolyMap::select(4, &[0]).unwrap());
        assert_eq!(k.proj_n(&objs, 1).unwrap(), PolyMap::select(4, &[1, 2]).unwrap());
        assert_eq!(k.proj_n(&objs, 2).unwrap(), PolyMap::select(4, &[3]).unwrap());
        assert!(k.proj_n(&objs, 3).is_err());
    }
}
