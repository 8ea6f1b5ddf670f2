//! Differential objects, their correspondence with bundles over the terminal
//! object, and the differential they induce.

use super::{make_bundle, DiffBundle};
use crate::cdc;
use crate::error::{dim_mismatch, Error, Result};
use crate::polymap::PolyMap;
use crate::scalar::Semiring;

/// An object of dimension `k` with a commutative monoid `(σ, ζ)` and a
/// second projection `p̂: T(A) → A`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffObject<C> {
    pub dim: usize,
    pub sigma: PolyMap<C>,
    pub zeta: PolyMap<C>,
    pub phat: PolyMap<C>,
}

impl<C: Semiring> DiffObject<C> {
    pub fn new(dim: usize, sigma: PolyMap<C>, zeta: PolyMap<C>, phat: PolyMap<C>) -> Result<Self> {
        let shapes = [(&sigma, 2 * dim, "sigma"), (&zeta, 0, "zeta"), (&phat, 2 * dim, "p̂")];
        for (f, dom, what) in shapes {
            if f.dom() != dom || f.cod() != dim {
                return Err(dim_mismatch(format!("{what} is {}->{}, expected {dom}->{dim}", f.dom(), f.cod())));
            }
        }
        Ok(DiffObject { dim, sigma, zeta, phat })
    }

    /// Coordinatewise addition, zero, and `p̂` the tangent-block projection.
    pub fn canonical(dim: usize) -> Self {
        let half = |lo| PolyMap::proj(2 * dim, lo, lo + dim).expect("in range");
        let sigma = half(0).add(&half(dim)).expect("same shape");
        DiffObject { dim, sigma, zeta: PolyMap::zero(0, dim), phat: PolyMap::proj(2 * dim, 0, dim).expect("in range") }
    }

    /// `!ζ: A → A`, the zero of the monoid at every point.
    pub fn bang_zeta(&self) -> PolyMap<C> {
        PolyMap::zero(self.dim, 0).compose(&self.zeta).expect("composable")
    }

    /// `⟨p̂, p⟩: T(A) → A × A`.
    pub fn splitting(&self) -> PolyMap<C> {
        self.phat.pair(&cdc::tangent_proj(self.dim)).expect("same domain")
    }

    /// The inverse of [`Self::splitting`], when it is affine with an
    /// invertible linear part.
    pub fn splitting_inverse(&self) -> Result<PolyMap<C>> {
        let split = self.splitting();
        crate::linalg::affine_inverse(&split, 0)
            .ok_or_else(|| Error::NotInvertible(format!("⟨p̂, p⟩ = {split} has no polynomial inverse")))
    }
}

/// The object underlying a bundle over the terminal object, with `p̂ = {1}`.
pub fn diffobj_from_bundle<C: Semiring>(b: &DiffBundle<C>) -> Result<DiffObject<C>> {
    if b.base() != 0 {
        return Err(Error::BaseNotTerminal(b.base()));
    }
    let k = b.fibre();
    let sigma = b.triv().product(b.triv()).compose(b.sigma())?;
    let phat = b.bracket(&PolyMap::identity(2 * k))?;
    DiffObject::new(k, sigma, b.zeta().clone(), phat)
}

/// The bundle over the terminal object with lift `⟨1, !ζ⟩ ⟨p̂, p⟩⁻¹`.
pub fn bundle_from_diffobj<C: Semiring>(o: &DiffObject<C>) -> Result<DiffBundle<C>> {
    let lambda = PolyMap::identity(o.dim).pair(&o.bang_zeta())?.compose(&o.splitting_inverse()?)?;
    make_bundle(format!("object({})", o.dim), 0, o.dim, o.sigma.clone(), o.zeta.clone(), lambda, None)
}

/// `D[f] = μ_A T(f) p̂_B`, with the direction block first.
pub fn derived_d<C: Semiring>(f: &PolyMap<C>, a: &DiffObject<C>, b: &DiffObject<C>) -> Result<PolyMap<C>> {
    if f.dom() != a.dim || f.cod() != b.dim {
        return Err(Error::ObjectMismatch(format!("map is {}->{}, objects have dimensions {} and {}", f.dom(), f.cod(), a.dim, b.dim)));
    }
    bundle_from_diffobj(a)?.mu()?.compose(&cdc::cdc_t(f))?.compose(&b.phat)
}

/// [`derived_d`] between the canonical objects on the domain and codomain.
pub fn canonical_derived_d<C: Semiring>(f: &PolyMap<C>) -> Result<PolyMap<C>> {
    derived_d(f, &DiffObject::canonical(f.dom()), &DiffObject::canonical(f.cod()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::standard;
    use crate::parse::parse_polymap;
    use crate::scalar::{Natural, Rational};

    fn pm(s: &str, dom: usize) -> PolyMap<Rational> {
        parse_polymap(s, Some(dom)).unwrap()
    }

    #[test]
    fn standard_over_point_has_tangent_projection() {
        let b = standard::<Rational>(0, 1, false);
        let o = diffobj_from_bundle(&b).unwrap();
        assert_eq!(o.phat, pm("x0", 2));
        assert_eq!(o, DiffObject::canonical(1));
        assert!(matches!(diffobj_from_bundle(&standard::<Rational>(1, 1, false)), Err(Error::BaseNotTerminal(1))));
    }

    #[test]
    fn round_trips() {
        for k in 1..=3 {
            let b = standard::<Rational>(0, k, false);
            let back = bundle_from_diffobj(&diffobj_from_bundle(&b).unwrap()).unwrap();
            assert_eq!((back.sigma(), back.zeta(), back.lambda()), (b.sigma(), b.zeta(), b.lambda()));
            let o = DiffObject::<Natural>::canonical(k);
            assert_eq!(diffobj_from_bundle(&bundle_from_diffobj(&o).unwrap()).unwrap(), o);
        }
    }

    #[test]
    fn derived_differential_examples() {
        assert_eq!(canonical_derived_d(&pm("x0^2", 1)).unwrap(), pm("2*x0*x1", 2));
        assert_eq!(canonical_derived_d(&PolyMap::<Rational>::identity(2)).unwrap(), pm("x0; x1", 4));
        assert_eq!(canonical_derived_d(&pm("3; 1", 2)).unwrap(), PolyMap::zero(4, 2));
    }

    #[test]
    fn second_projection_does_not_split() {
        let mut o = DiffObject::<Rational>::canonical(1);
        o.phat = pm("x1", 2);
        assert!(matches!(bundle_from_diffobj(&o), Err(Error::NotInvertible(_))));
    }
}
