//! The tangent-model contract and the constructions derived from its data.
//!
//! Objects are dimensions. A model supplies composition, pairing, the
//! tangent functor on morphisms, and a way to embed coordinate-level
//! polynomial maps as morphisms; the structural transformations `p, 0, +,
//! ℓ, c` are those embeddings of the blockwise maps in [`crate::cdc`].

use std::fmt::Debug;

use crate::cdc;
use crate::error::{dim_mismatch, Result};
use crate::polymap::PolyMap;
use crate::random::{random_map, Sampler, Shape};
use crate::report::{Comparable, Fault};
use crate::scalar::Semiring;

pub trait TangentModel: Sync {
    type Scalar: Semiring;
    type Mor: Comparable + Clone + Debug + Send + Sync;

    fn describe(&self) -> String;
    fn dom(&self, f: &Self::Mor) -> usize;
    fn cod(&self, f: &Self::Mor) -> usize;
    /// `f` then `g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// Concatenate outputs of maps with a common domain.
    fn pair(&self, parts: &[&Self::Mor]) -> Result<Self::Mor>;
    fn tangent_map(&self, f: &Self::Mor) -> Result<Self::Mor>;
    /// Embed a map on object coordinates.
    fn structural(&self, f: PolyMap<Self::Scalar>) -> Self::Mor;
    /// Index list when `f` is a coordinate selection.
    fn as_selection(&self, f: &Self::Mor) -> Option<Vec<usize>>;
    fn random_mor(&self, rng: &mut Sampler, dom: usize, cod: usize, shape: &Shape) -> Self::Mor;

    fn fault(&self) -> Option<Fault> {
        None
    }

    fn identity(&self, n: usize) -> Self::Mor {
        self.structural(PolyMap::identity(n))
    }

    fn select(&self, dom: usize, idx: &[usize]) -> Result<Self::Mor> {
        Ok(self.structural(PolyMap::select(dom, idx)?))
    }

    fn p(&self, m: usize) -> Self::Mor {
        self.structural(cdc::tangent_proj(m))
    }

    fn zero(&self, m: usize) -> Self::Mor {
        self.structural(cdc::tangent_zero(m))
    }

    fn plus(&self, m: usize) -> Self::Mor {
        self.structural(cdc::tangent_plus(m))
    }

    fn lift(&self, m: usize) -> Self::Mor {
        match self.fault() {
            Some(Fault::DroppedZeroBlock) => self.structural(dropped_zero_lift(m)),
            _ => self.structural(cdc::vertical_lift(m)),
        }
    }

    fn flip(&self, m: usize) -> Self::Mor {
        match self.fault() {
            Some(Fault::IdentityFlip) => self.identity(4 * m),
            _ => self.structural(cdc::canonical_flip(m)),
        }
    }
}

/// `(u, x) ↦ (u, 0, u, x)`: a lift whose second zero block is overwritten.
fn dropped_zero_lift<C: Semiring>(m: usize) -> PolyMap<C> {
    let n = 2 * m;
    let idx_u: Vec<usize> = (0..m).collect();
    let u = PolyMap::select_unchecked(n, &idx_u);
    let x = PolyMap::select_unchecked(n, &(m..n).collect::<Vec<_>>());
    PolyMap::concat(&[&u, &PolyMap::zero(n, m), &u, &x]).expect("common domain")
}

/// Shorthand for `T(f)` followed by `T(T(f))`.
pub fn tangent_iter<M: TangentModel>(model: &M, f: &M::Mor, times: usize) -> Result<M::Mor> {
    let mut g = f.clone();
    for _ in 0..times {
        g = model.tangent_map(&g)?;
    }
    Ok(g)
}

pub fn compose_all<M: TangentModel>(model: &M, maps: &[&M::Mor]) -> Result<M::Mor> {
    let (first, rest) = maps.split_first().ok_or_else(|| dim_mismatch("empty composite"))?;
    let mut acc = (*first).clone();
    for g in rest {
        acc = model.compose(&acc, g)?;
    }
    Ok(acc)
}

/// An object presented as a coordinate carrier with selection legs.
///
/// Pairing into it takes each carrier coordinate from the first leg that
/// covers it; callers are responsible for the legs agreeing where they
/// overlap (that agreement is the pullback condition).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnObject {
    pub base: usize,
    pub arity: usize,
    pub carrier: usize,
    pub legs: Vec<Vec<usize>>,
}

impl TnObject {
    /// `T_n(M)`: carrier `(u_1, …, u_n, x)` of dimension `(n+1)·m`.
    pub fn new(m: usize, n: usize) -> Self {
        assert!(n >= 1, "arity must be positive");
        let legs = (0..n).map(|i| (i * m..(i + 1) * m).chain(n * m..(n + 1) * m).collect()).collect();
        TnObject { base: m, arity: n, carrier: (n + 1) * m, legs }
    }

    /// The image of this object under `T`: legs become `T` of the selections.
    pub fn tangent(&self) -> Self {
        TnObject {
            base: 2 * self.base,
            arity: self.arity,
            carrier: 2 * self.carrier,
            legs: self.legs.iter().map(|l| tangent_selection(l, self.carrier)).collect(),
        }
    }

    pub fn leg<M: TangentModel>(&self, model: &M, i: usize) -> Result<M::Mor> {
        model.select(self.carrier, &self.legs[i])
    }

    /// `⟨h_0, …, h_{n-1}⟩` into the carrier.
    pub fn pair_into<M: TangentModel>(&self, model: &M, hs: &[&M::Mor]) -> Result<M::Mor> {
        if hs.len() != self.legs.len() {
            return Err(dim_mismatch(format!("{} maps for {} legs", hs.len(), self.legs.len())));
        }
        let mut cover: Vec<Option<(usize, usize)>> = vec![None; self.carrier];
        for (i, leg) in self.legs.iter().enumerate() {
            for (pos, &j) in leg.iter().enumerate() {
                cover[j].get_or_insert((i, pos));
            }
        }
        let mut parts = Vec::with_capacity(self.carrier);
        for (j, c) in cover.iter().enumerate() {
            let (i, pos) = c.ok_or_else(|| dim_mismatch(format!("carrier coordinate {j} not covered by any leg")))?;
            let h = hs[i];
            let cod = model.cod(h);
            if cod != self.legs[i].len() {
                return Err(dim_mismatch(format!("map into leg {i} has codomain {cod}")));
            }
            parts.push(model.compose(h, &model.select(cod, &[pos])?)?);
        }
        if parts.is_empty() {
            let dom = hs.first().map(|h| model.dom(h)).unwrap_or(0);
            return Ok(model.structural(PolyMap::zero(dom, 0)));
        }
        model.pair(&parts.iter().collect::<Vec<_>>())
    }
}

/// Indices of `T(select(idx))` on a carrier of dimension `carrier`.
pub fn tangent_selection(idx: &[usize], carrier: usize) -> Vec<usize> {
    idx.iter().copied().chain(idx.iter().map(|i| i + carrier)).collect()
}

/// `T_n(f) = ⟨π_0 T(f), …, π_{n-1} T(f)⟩`.
pub fn tn_map<M: TangentModel>(model: &M, f: &M::Mor, n: usize) -> Result<M::Mor> {
    let src = TnObject::new(model.dom(f), n);
    let dst = TnObject::new(model.cod(f), n);
    let tf = model.tangent_map(f)?;
    let legs = (0..n)
        .map(|i| model.compose(&src.leg(model, i)?, &tf))
        .collect::<Result<Vec<_>>>()?;
    dst.pair_into(model, &legs.iter().collect::<Vec<_>>())
}

/// `v = ⟨π0 ℓ, π1 0_T⟩ T(+) : T₂(M) → T²(M)`.
pub fn vertical_lift_v<M: TangentModel>(model: &M, m: usize) -> Result<M::Mor> {
    let t2 = TnObject::new(m, 2);
    let a = model.compose(&t2.leg(model, 0)?, &model.lift(m))?;
    let b = model.compose(&t2.leg(model, 1)?, &model.zero(2 * m))?;
    let paired = t2.tangent().pair_into(model, &[&a, &b])?;
    model.compose(&paired, &model.tangent_map(&model.plus(m))?)
}

/// `μ = ⟨p_T, T(p)⟩ + : T²(M) → T(M)`.
pub fn monad_mult<M: TangentModel>(model: &M, m: usize) -> Result<M::Mor> {
    let t2 = TnObject::new(m, 2);
    let p_t = model.p(2 * m);
    let t_p = model.tangent_map(&model.p(m))?;
    model.compose(&t2.pair_into(model, &[&p_t, &t_p])?, &model.plus(m))
}

/// Comparison data for the universality square of `v`.
///
/// The pullback of `T(p)` along `0` is presented with carrier
/// `(x, rest)`, where `rest` are the coordinates of `T²(M)` not read by
/// `T(p)`. `comparison` is `⟨π0 p, v ; rest⟩` and `witness` its inverse
/// when it is a coordinate permutation.
pub struct Universality<Mor> {
    pub v: Mor,
    pub comparison: Mor,
    pub witness: Option<Mor>,
    pub pullback_dim: usize,
}

pub fn universality<M: TangentModel>(model: &M, m: usize) -> Result<Universality<M::Mor>> {
    let v = vertical_lift_v(model, m)?;
    let tp = model.tangent_map(&model.p(m))?;
    let read = model
        .as_selection(&tp)
        .ok_or_else(|| dim_mismatch("T(p) is not a coordinate selection"))?;
    let rest: Vec<usize> = (0..4 * m).filter(|i| !read.contains(i)).collect();
    let t2 = TnObject::new(m, 2);
    let base = model.compose(&t2.leg(model, 0)?, &model.p(m))?;
    let fibre = model.compose(&v, &model.select(4 * m, &rest)?)?;
    let comparison = model.pair(&[&base, &fibre])?;
    let pullback_dim = m + rest.len();
    let witness = model.as_selection(&comparison).and_then(|sel| {
        let n = sel.len();
        if n != t2.carrier || n != pullback_dim {
            return None;
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &j) in sel.iter().enumerate() {
            if inv[j] != usize::MAX {
                return None;
            }
            inv[j] = i;
        }
        model.select(pullback_dim, &inv).ok()
    });
    Ok(Universality { v, comparison, witness, pullback_dim })
}

/// The polynomial model: `T(f) = ⟨D f, π1 f⟩` over exact scalars.
#[derive(Clone, Debug, Default)]
pub struct PolyTangentModel<C> {
    pub fault: Option<Fault>,
    _scalar: std::marker::PhantomData<C>,
}

impl<C: Semiring> PolyTangentModel<C> {
    pub fn new() -> Self {
        PolyTangentModel { fault: None, _scalar: std::marker::PhantomData }
    }

    pub fn with_fault(fault: Option<Fault>) -> Self {
        PolyTangentModel { fault, _scalar: std::marker::PhantomData }
    }
}

impl<C: Semiring> TangentModel for PolyTangentModel<C> {
    type Scalar = C;
    type Mor = PolyMap<C>;

    fn describe(&self) -> String {
        format!("polynomial model over {}", C::MODE)
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

    fn pair(&self, parts: &[&PolyMap<C>]) -> Result<PolyMap<C>> {
        PolyMap::concat(parts)
    }

    fn tangent_map(&self, f: &PolyMap<C>) -> Result<PolyMap<C>> {
        Ok(cdc::cdc_t(f))
    }

    fn structural(&self, f: PolyMap<C>) -> PolyMap<C> {
        f
    }

    fn as_selection(&self, f: &PolyMap<C>) -> Option<Vec<usize>> {
        f.as_selection()
    }

    fn random_mor(&self, rng: &mut Sampler, dom: usize, cod: usize, shape: &Shape) -> PolyMap<C> {
        random_map(rng, dom, cod, shape)
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

    fn model() -> PolyTangentModel<Rational> {
        PolyTangentModel::new()
    }

    fn pm(s: &str, dom: usize) -> PolyMap<Rational> {
        parse_polymap(s, Some(dom)).unwrap()
    }

    #[test]
    fn v_at_dim_one() {
        // Expanding ⟨π0ℓ, π1 0_T⟩T(+) by hand with ℓ(u,x) = (u,0,0,x).
        let v = vertical_lift_v(&model(), 1).unwrap();
        assert_eq!(v, pm("x0; 0; x1; x2", 3));
    }

    #[test]
    fn v_square_commutes() {
        let md = model();
        for m in 1..=3 {
            let v = vertical_lift_v(&md, m).unwrap();
            let t2 = TnObject::new(m, 2);
            let lhs = v.compose(&cdc::cdc_t(&md.p(m))).unwrap();
            let rhs = t2.leg(&md, 0).unwrap().compose(&md.p(m)).unwrap().compose(&md.zero(m)).unwrap();
            assert_eq!(lhs, rhs);
            let pt = v.compose(&md.p(2 * m)).unwrap();
            assert_eq!(pt, t2.leg(&md, 1).unwrap());
        }
    }

    #[test]
    fn monad_mult_at_dim_one() {
        assert_eq!(monad_mult(&model(), 1).unwrap(), pm("x1 + x2; x3", 4));
    }

    #[test]
    fn tn_layout() {
        let t1 = TnObject::new(2, 1);
        assert_eq!(t1.leg(&model(), 0).unwrap(), PolyMap::identity(4));
        let t2 = TnObject::new(1, 2);
        assert_eq!(t2.carrier, 3);
        assert_eq!(t2.legs, vec![vec![0, 2], vec![1, 2]]);
        let t3 = TnObject::new(2, 3);
        let md = model();
        let base: Vec<_> = (0..3).map(|i| t3.leg(&md, i).unwrap().compose(&md.p(2)).unwrap()).collect();
        assert!(base.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn witness_inverts_comparison() {
        let md = model();
        for m in 1..=3 {
            let u = universality(&md, m).unwrap();
            let rho = u.witness.expect("permutation comparison");
            assert!(u.comparison.compose(&rho).unwrap().is_identity());
            assert!(rho.compose(&u.comparison).unwrap().is_identity());
        }
    }

    #[test]
    fn faulty_lift_breaks_universality_shape() {
        let md = PolyTangentModel::<Rational>::with_fault(Some(Fault::DroppedZeroBlock));
        assert_eq!(md.lift(1), pm("x0; 0; x0; x1", 2));
    }
}
