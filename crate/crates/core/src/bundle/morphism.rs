//! Bundle morphisms and the linearity and additivity predicates.

use super::DiffBundle;
use crate::cdc;
use crate::error::{Error, Result};
use crate::polymap::PolyMap;
use crate::report::Comparable;
use crate::scalar::Semiring;

/// `(f, g)` with `f: E → E'` over `g: M → M'`, i.e. `f q' = q g`.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleMor<C> {
    pub f: PolyMap<C>,
    pub g: PolyMap<C>,
}

impl<C: Semiring> BundleMor<C> {
    pub fn new(f: PolyMap<C>, g: PolyMap<C>, src: &DiffBundle<C>, tgt: &DiffBundle<C>) -> Result<Self> {
        if f.dom() != src.total() || f.cod() != tgt.total() || g.dom() != src.base() || g.cod() != tgt.base() {
            return Err(Error::NotBundleMorphism(format!(
                "shapes {}->{} over {}->{} do not match {}->{} over {}->{}",
                f.dom(),
                f.cod(),
                g.dom(),
                g.cod(),
                src.total(),
                tgt.total(),
                src.base(),
                tgt.base()
            )));
        }
        let lhs = f.compose(tgt.q())?;
        let rhs = src.q().compose(&g)?;
        if lhs != rhs {
            return Err(Error::NotBundleMorphism(format!("f;q' = {lhs} but q;g = {rhs}")));
        }
        Ok(BundleMor { f, g })
    }

    pub fn identity(b: &DiffBundle<C>) -> Self {
        BundleMor { f: PolyMap::identity(b.total()), g: PolyMap::identity(b.base()) }
    }

    pub fn compose(&self, other: &BundleMor<C>) -> Result<Self> {
        Ok(BundleMor { f: self.f.compose(&other.f)?, g: self.g.compose(&other.g)? })
    }

    /// `f λ' = λ T(f)`.
    pub fn is_linear(&self, src: &DiffBundle<C>, tgt: &DiffBundle<C>) -> Result<bool> {
        Ok(self.f.compose(tgt.lambda())? == src.lambda().compose(&cdc::cdc_t(&self.f))?)
    }

    /// `ζ f = g ζ'`.
    pub fn preserves_zero(&self, src: &DiffBundle<C>, tgt: &DiffBundle<C>) -> Result<bool> {
        Ok(src.zeta().compose(&self.f)? == self.g.compose(tgt.zeta())?)
    }

    /// `f × f: E₂ → E'₂`, i.e. `⟨π0 f, π1 f⟩`.
    pub fn on_square(&self, src: &DiffBundle<C>, tgt: &DiffBundle<C>) -> Result<PolyMap<C>> {
        tgt.pair_power(&[&src.leg(2, 0)?.compose(&self.f)?, &src.leg(2, 1)?.compose(&self.f)?])
    }

    /// `σ f = (f × f) σ'` and `ζ f = g ζ'`.
    pub fn is_additive(&self, src: &DiffBundle<C>, tgt: &DiffBundle<C>) -> Result<bool> {
        let sums = src.sigma().compose(&self.f)? == self.on_square(src, tgt)?.compose(tgt.sigma())?;
        Ok(sums && self.preserves_zero(src, tgt)?)
    }

    /// `μ T(f) = (f × f) μ'`.
    pub fn commutes_with_mu(&self, src: &DiffBundle<C>, tgt: &DiffBundle<C>) -> Result<bool> {
        Ok(src.mu()?.compose(&cdc::cdc_t(&self.f))? == self.on_square(src, tgt)?.compose(&tgt.mu()?)?)
    }
}

impl<C: Semiring> Comparable for BundleMor<C> {
    fn render(&self) -> String {
        format!("({} over {})", Comparable::render(&self.f), Comparable::render(&self.g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{pullback_bundle, standard, tangent_bundle, tangent_of_bundle, transport, trivial, whitney_sum};
    use crate::parse::parse_polymap;
    use crate::scalar::Rational;

    fn pm(s: &str, dom: usize) -> PolyMap<Rational> {
        parse_polymap(s, Some(dom)).unwrap()
    }

    fn all_hold(m: &BundleMor<Rational>, s: &DiffBundle<Rational>, t: &DiffBundle<Rational>) {
        assert!(m.is_linear(s, t).unwrap(), "{m:?}");
        assert!(m.is_additive(s, t).unwrap(), "{m:?}");
        assert!(m.commutes_with_mu(s, t).unwrap(), "{m:?}");
    }

    #[test]
    fn projection_to_trivial_is_linear() {
        let b = standard::<Rational>(1, 2, false);
        let one = trivial(1);
        let m = BundleMor::new(b.q().clone(), PolyMap::identity(1), &b, &one).unwrap();
        all_hold(&m, &b, &one);
    }

    #[test]
    fn tangent_maps_are_linear() {
        let f = pm("x0^2*x1 - 1; x1 + 3*x0; x0*x1", 2);
        let (src, tgt) = (tangent_bundle::<Rational>(2), tangent_bundle(3));
        let m = BundleMor::new(cdc::cdc_t(&f), f, &src, &tgt).unwrap();
        all_hold(&m, &src, &tgt);
    }

    #[test]
    fn zero_and_projection_of_tangent_bundle() {
        let b = standard::<Rational>(1, 1, false);
        let tb = tangent_of_bundle(&b).unwrap();
        let zero = BundleMor::new(cdc::tangent_zero(2), cdc::tangent_zero(1), &b, &tb).unwrap();
        all_hold(&zero, &b, &tb);
        let proj = BundleMor::new(cdc::tangent_proj(2), cdc::tangent_proj(1), &tb, &b).unwrap();
        all_hold(&proj, &tb, &b);
    }

    #[test]
    fn pullback_and_whitney_maps() {
        let b = tangent_bundle::<Rational>(1);
        let pb = pullback_bundle(&pm("x0*x1", 2), &b).unwrap();
        let m = BundleMor::new(pb.into_total.clone(), pb.over.clone(), &pb.bundle, &b).unwrap();
        all_hold(&m, &pb.bundle, &b);
        let s = standard::<Rational>(1, 2, false);
        let w = whitney_sum(&b, &s).unwrap();
        for (pr, target) in w.projections.iter().zip([&b, &s]) {
            let m = BundleMor::new(pr.clone(), PolyMap::identity(1), &w.bundle, target).unwrap();
            all_hold(&m, &w.bundle, target);
        }
    }

    #[test]
    fn transport_isomorphisms_are_linear_both_ways() {
        let b = standard::<Rational>(1, 1, false);
        let (phi, psi) = (pm("x0; x1 + x0^2", 2), pm("x0; x1 - x0^2", 2));
        let b2 = transport(&b, &phi, &psi).unwrap();
        all_hold(&BundleMor::new(phi, PolyMap::identity(1), &b, &b2).unwrap(), &b, &b2);
        all_hold(&BundleMor::new(psi, PolyMap::identity(1), &b2, &b).unwrap(), &b2, &b);
    }

    #[test]
    fn fibrewise_squaring_is_neither() {
        let b = standard::<Rational>(1, 1, false);
        let m = BundleMor::new(pm("x0; x1^2", 2), PolyMap::identity(1), &b, &b).unwrap();
        assert!(!m.is_linear(&b, &b).unwrap());
        assert!(!m.is_additive(&b, &b).unwrap());
        assert!(!m.commutes_with_mu(&b, &b).unwrap());
    }

    #[test]
    fn base_mismatch_is_rejected() {
        let b = standard::<Rational>(1, 1, false);
        let err = BundleMor::new(pm("x0 + x1; x1", 2), PolyMap::identity(1), &b, &b).unwrap_err();
        assert!(matches!(err, Error::NotBundleMorphism(_)));
    }
}
