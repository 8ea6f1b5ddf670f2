//! Differential bundles over polynomial maps, in display normal form.
//!
//! A bundle over a base of dimension `m` with fibre dimension `k` has a
//! total space `E` of dimension `m + k` and a trivialization
//! `t: E → (x, a)` with the base coordinates first. Every fibred power
//! `E_n` is presented by the carrier `(x, a_1, …, a_n)` in trivialized
//! coordinates, and `σ` is given on the carrier of `E₂`.
//!
//! `T(E)` uses the usual `(tangent, point)` layout; after `T(t)` its
//! coordinates read `(dx, da, x, a)`. The canonical pullback of `T(q)`
//! along `0` has carrier `(x, da, a)`.

mod build;
mod file;
mod morphism;
mod object;

pub use build::{pullback_bundle, standard, tangent_bundle, tangent_of_bundle, transport, trivial, whitney_sum, PullbackBundle, WhitneySum};
pub use file::{parse_bundle_file, BundleFile};
pub use morphism::BundleMor;
pub use object::{bundle_from_diffobj, canonical_derived_d, derived_d, diffobj_from_bundle, DiffObject};

use crate::cdc;
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::affine_inverse;
use crate::polymap::PolyMap;
use crate::report::{Checks, Comparable};
use crate::scalar::Semiring;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffBundle<C> {
    pub label: String,
    base: usize,
    fibre: usize,
    q: PolyMap<C>,
    sigma: PolyMap<C>,
    zeta: PolyMap<C>,
    lambda: PolyMap<C>,
    triv: PolyMap<C>,
    triv_inv: PolyMap<C>,
    witness: Option<PolyMap<C>>,
}

pub(crate) fn slice<C: Semiring>(dom: usize, lo: usize, len: usize) -> PolyMap<C> {
    PolyMap::proj(dom, lo, lo + len).expect("slice in range")
}

fn check_shape<C: Semiring>(what: &str, f: &PolyMap<C>, dom: usize, cod: usize) -> Result<()> {
    if f.dom() != dom || f.cod() != cod {
        return Err(dim_mismatch(format!("{what} is {}->{}, expected {dom}->{cod}", f.dom(), f.cod())));
    }
    Ok(())
}

/// Build a bundle from its structure maps. `triv` defaults to the identity,
/// meaning the total space is already laid out as `(x, a)`.
///
/// The axioms are not checked here; see [`DiffBundle::verify`].
pub fn make_bundle<C: Semiring>(
    label: impl Into<String>,
    base: usize,
    fibre: usize,
    sigma: PolyMap<C>,
    zeta: PolyMap<C>,
    lambda: PolyMap<C>,
    triv: Option<(PolyMap<C>, PolyMap<C>)>,
) -> Result<DiffBundle<C>> {
    let e = base + fibre;
    let (triv, triv_inv) = triv.unwrap_or_else(|| (PolyMap::identity(e), PolyMap::identity(e)));
    check_shape("trivialization", &triv, e, e)?;
    check_shape("inverse trivialization", &triv_inv, e, e)?;
    check_shape("sigma", &sigma, base + 2 * fibre, e)?;
    check_shape("zeta", &zeta, base, e)?;
    check_shape("lambda", &lambda, e, 2 * e)?;
    if !triv.compose(&triv_inv)?.is_identity() {
        return Err(Error::BadTrivialization(format!("t then t⁻¹ is {}", triv.compose(&triv_inv)?)));
    }
    if !triv_inv.compose(&triv)?.is_identity() {
        return Err(Error::BadTrivialization(format!("t⁻¹ then t is {}", triv_inv.compose(&triv)?)));
    }
    let q = triv.compose(&slice(e, 0, base))?;
    let mut b = DiffBundle { label: label.into(), base, fibre, q, sigma, zeta, lambda, triv, triv_inv, witness: None };
    b.witness = b.derive_witness()?;
    Ok(b)
}

impl<C: Semiring> DiffBundle<C> {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn fibre(&self) -> usize {
        self.fibre
    }

    pub fn total(&self) -> usize {
        self.base + self.fibre
    }

    pub fn q(&self) -> &PolyMap<C> {
        &self.q
    }

    pub fn sigma(&self) -> &PolyMap<C> {
        &self.sigma
    }

    pub fn zeta(&self) -> &PolyMap<C> {
        &self.zeta
    }

    pub fn lambda(&self) -> &PolyMap<C> {
        &self.lambda
    }

    pub fn triv(&self) -> &PolyMap<C> {
        &self.triv
    }

    pub fn triv_inv(&self) -> &PolyMap<C> {
        &self.triv_inv
    }

    /// `ρ: P → E₂`, when the comparison map has a polynomial inverse.
    pub fn witness(&self) -> Option<&PolyMap<C>> {
        self.witness.as_ref()
    }

    /// Dimension of the carrier of `E_n`.
    pub fn power_dim(&self, n: usize) -> usize {
        self.base + n * self.fibre
    }

    /// Base coordinates of `h: X → E`.
    pub fn base_part(&self, h: &PolyMap<C>) -> Result<PolyMap<C>> {
        h.compose(&self.triv)?.compose(&slice(self.total(), 0, self.base))
    }

    /// Fibre coordinates of `h: X → E`.
    pub fn fibre_part(&self, h: &PolyMap<C>) -> Result<PolyMap<C>> {
        h.compose(&self.triv)?.compose(&slice(self.total(), self.base, self.fibre))
    }

    /// The point of `E` with trivialized coordinates `(x, a)`.
    pub fn from_parts(&self, x: &PolyMap<C>, a: &PolyMap<C>) -> Result<PolyMap<C>> {
        x.pair(a)?.compose(&self.triv_inv)
    }

    /// `π_i: E_n → E`.
    pub fn leg(&self, n: usize, i: usize) -> Result<PolyMap<C>> {
        if i >= n {
            return Err(dim_mismatch(format!("leg {i} of a {n}-fold power")));
        }
        let m = self.base;
        let idx: Vec<usize> = (0..m).chain(m + i * self.fibre..m + (i + 1) * self.fibre).collect();
        PolyMap::select(self.power_dim(n), &idx)?.compose(&self.triv_inv)
    }

    /// `⟨h_0, …, h_{n-1}⟩: X → E_n` for maps with a common base point.
    pub fn pair_power(&self, hs: &[&PolyMap<C>]) -> Result<PolyMap<C>> {
        let first = hs.first().ok_or_else(|| dim_mismatch("pairing into an empty power"))?;
        let mut parts = vec![self.base_part(first)?];
        for h in hs {
            parts.push(self.fibre_part(h)?);
        }
        PolyMap::concat(&parts.iter().collect::<Vec<_>>())
    }

    /// `T(t)`, giving `T(E)` the coordinates `(dx, da, x, a)`.
    pub fn tangent_triv(&self) -> PolyMap<C> {
        cdc::cdc_t(&self.triv)
    }

    /// The four trivialized blocks `(dx, da, x, a)` of `f: X → T(E)`.
    pub(crate) fn tangent_blocks(&self, f: &PolyMap<C>) -> Result<[PolyMap<C>; 4]> {
        let (m, k) = (self.base, self.fibre);
        let ft = f.compose(&self.tangent_triv())?;
        let n = 2 * (m + k);
        Ok([
            ft.compose(&slice(n, 0, m))?,
            ft.compose(&slice(n, m, k))?,
            ft.compose(&slice(n, m + k, m))?,
            ft.compose(&slice(n, 2 * m + k, k))?,
        ])
    }

    /// `⟨f, g⟩: X → T(E₂)` for `f, g` agreeing after `T(q)`; the carrier is
    /// `T` of the `E₂` carrier, `(dx, da1, da2, x, a1, a2)`.
    pub fn pair_tangent_power(&self, f: &PolyMap<C>, g: &PolyMap<C>) -> Result<PolyMap<C>> {
        let [dx, da1, x, a1] = self.tangent_blocks(f)?;
        let [_, da2, _, a2] = self.tangent_blocks(g)?;
        PolyMap::concat(&[&dx, &da1, &da2, &x, &a1, &a2])
    }

    /// `⟨f, g⟩: X → T₂(E)` for `f, g` with a common point, carrier `(u1, u2, e)`.
    pub fn pair_tangent_sum(&self, f: &PolyMap<C>, g: &PolyMap<C>) -> Result<PolyMap<C>> {
        let e = self.total();
        let u1 = f.compose(&slice(2 * e, 0, e))?;
        let u2 = g.compose(&slice(2 * e, 0, e))?;
        let pt = f.compose(&slice(2 * e, e, e))?;
        PolyMap::concat(&[&u1, &u2, &pt])
    }

    /// `μ = ⟨π0 λ, π1 0⟩ T(σ): E₂ → T(E)`.
    pub fn mu(&self) -> Result<PolyMap<C>> {
        let first = self.leg(2, 0)?.compose(&self.lambda)?;
        let second = self.leg(2, 1)?.compose(&cdc::tangent_zero(self.total()))?;
        self.pair_tangent_power(&first, &second)?.compose(&cdc::cdc_t(&self.sigma))
    }

    /// Dimension of the canonical pullback `P` of `T(q)` along `0`.
    pub fn pullback_dim(&self) -> usize {
        self.base + 2 * self.fibre
    }

    /// `P → T(E)`, `(x, da, a) ↦ (0, da, x, a)` in trivialized coordinates.
    pub fn pullback_inclusion(&self) -> Result<PolyMap<C>> {
        let (m, k) = (self.base, self.fibre);
        let n = self.pullback_dim();
        let zero = PolyMap::zero(n, m);
        let coords = PolyMap::concat(&[&zero, &slice(n, m, k), &slice(n, 0, m), &slice(n, m + k, k)])?;
        coords.compose(&cdc::cdc_t(&self.triv_inv))
    }

    /// `κ = ⟨π0 q, μ restricted to (da, a)⟩: E₂ → P`.
    pub fn kappa(&self) -> Result<PolyMap<C>> {
        let base = self.leg(2, 0)?.compose(&self.q)?;
        let [_, da, _, a] = self.tangent_blocks(&self.mu()?)?;
        PolyMap::concat(&[&base, &da, &a])
    }

    fn derive_witness(&self) -> Result<Option<PolyMap<C>>> {
        let m = self.base;
        let n = self.pullback_dim();
        let kappa = self.kappa()?;
        if kappa.compose(&slice(n, 0, m))? != slice(n, 0, m) {
            return Ok(None);
        }
        let fibre = kappa.compose(&slice(n, m, n - m))?;
        match affine_inverse(&fibre, m) {
            Some(inv) => Ok(Some(slice(n, 0, m).pair(&inv)?)),
            None => Ok(None),
        }
    }

    /// `{f}: X → E`, the unique map with `f = ⟨{f} λ, f p 0⟩ T(σ)`.
    ///
    /// Requires `f T(q) = f p q 0`; the defining equation is re-checked on
    /// the result.
    pub fn bracket(&self, f: &PolyMap<C>) -> Result<PolyMap<C>> {
        let e = self.total();
        if f.cod() != 2 * e {
            return Err(dim_mismatch(format!("bracket of a map into {} coordinates, T(E) has {}", f.cod(), 2 * e)));
        }
        let fp = f.compose(&cdc::tangent_proj(e))?;
        let lhs = f.compose(&cdc::cdc_t(&self.q))?;
        let rhs = fp.compose(&self.q)?.compose(&cdc::tangent_zero(self.base))?;
        if lhs != rhs {
            let detail = match lhs.residual(&rhs) {
                Some(r) => format!("f;T(q) - f;p;q;0 = {r}"),
                None => format!("f;T(q) = {lhs} but f;p;q;0 = {rhs}"),
            };
            return Err(Error::Precondition(detail));
        }
        let rho = self
            .witness
            .as_ref()
            .ok_or_else(|| Error::NotInvertible(format!("comparison map of {} has no polynomial inverse", self.label)))?;
        let [_, da, _, a] = self.tangent_blocks(f)?;
        let point = PolyMap::concat(&[&fp.compose(&self.q)?, &da, &a])?;
        let h = point.compose(rho)?.compose(&self.leg(2, 0)?)?;
        let rebuilt = self.unbracket(&h, &fp)?;
        if &rebuilt != f {
            return Err(Error::Precondition(format!("bracket {h} does not rebuild f (got {rebuilt})")));
        }
        Ok(h)
    }

    /// `⟨h λ, y 0⟩ T(σ)` for `h, y: X → E` over a common base point.
    pub fn unbracket(&self, h: &PolyMap<C>, y: &PolyMap<C>) -> Result<PolyMap<C>> {
        let hl = h.compose(&self.lambda)?;
        let y0 = y.compose(&cdc::tangent_zero(self.total()))?;
        self.pair_tangent_power(&hl, &y0)?.compose(&cdc::cdc_t(&self.sigma))
    }

    /// Run every axiom check on this bundle.
    pub fn verify(&self) -> Checks {
        verify_bundle(self)
    }
}

/// One check per bundle axiom, plus derived corroborating identities.
pub fn verify_bundle<C: Semiring>(b: &DiffBundle<C>) -> Checks {
    let mut checks = Checks::new();
    let inst = || b.label.clone();
    let (m, e) = (b.base, b.total());
    let c = |f: &PolyMap<C>, g: &PolyMap<C>| f.compose(g);
    let id_e = PolyMap::identity(e);
    let e2 = b.power_dim(2);
    let leg = |n, i| b.leg(n, i);

    checks.eq("triv/left-inverse", inst, c(&b.triv, &b.triv_inv), Ok(id_e.clone()));
    checks.eq("triv/right-inverse", inst, c(&b.triv_inv, &b.triv), Ok(PolyMap::identity(e)));
    checks.eq("triv/projects-to-base", inst, c(&b.triv, &slice(e, 0, m)), Ok(b.q.clone()));

    // Additive bundle (q, σ, ζ).
    let lhs = c(&b.sigma, &b.q);
    let rhs = leg(2, 0).and_then(|p| c(&p, &b.q));
    checks.eq("additive/sum-over-base", inst, lhs, rhs);
    checks.eq("additive/zero-over-base", inst, c(&b.zeta, &b.q), Ok(PolyMap::identity(m)));
    let qz = c(&b.q, &b.zeta);
    let unit = qz.as_ref().map_err(Clone::clone).and_then(|qz| b.pair_power(&[&id_e, qz])).and_then(|p| c(&p, &b.sigma));
    checks.eq("additive/unit", inst, unit, Ok(id_e.clone()));
    let swapped = (|| b.pair_power(&[&leg(2, 1)?, &leg(2, 0)?])?.compose(&b.sigma))();
    checks.eq("additive/commutative", inst, swapped, Ok(b.sigma.clone()));
    let assoc = (|| -> Result<(PolyMap<C>, PolyMap<C>)> {
        let (p0, p1, p2) = (leg(3, 0)?, leg(3, 1)?, leg(3, 2)?);
        let left = b.pair_power(&[&b.pair_power(&[&p0, &p1])?.compose(&b.sigma)?, &p2])?.compose(&b.sigma)?;
        let right = b.pair_power(&[&p0, &b.pair_power(&[&p1, &p2])?.compose(&b.sigma)?])?.compose(&b.sigma)?;
        Ok((left, right))
    })();
    let (l, r) = split(assoc);
    checks.eq("additive/associative", inst, l, r);

    // (λ, 0) into T(q).
    let tq = cdc::cdc_t(&b.q);
    let t_sigma = cdc::cdc_t(&b.sigma);
    checks.eq("lift-over-zero/over", inst, c(&b.lambda, &tq), c(&b.q, &cdc::tangent_zero(m)));
    let legs_lifted = (|| Ok::<_, Error>((leg(2, 0)?.compose(&b.lambda)?, leg(2, 1)?.compose(&b.lambda)?)))();
    let sum_lift = c(&b.sigma, &b.lambda);
    let rhs = legs_lifted.as_ref().map_err(Clone::clone).and_then(|(l0, l1)| b.pair_tangent_power(l0, l1)?.compose(&t_sigma));
    checks.eq("lift-over-zero/preserves-sum", inst, sum_lift.clone(), rhs);
    checks.eq("lift-over-zero/preserves-zero", inst, c(&b.zeta, &b.lambda), c(&cdc::tangent_zero(m), &cdc::cdc_t(&b.zeta)));

    // (λ, ζ) into the tangent bundle of E.
    checks.eq("lift-over-zeta/over", inst, c(&b.lambda, &cdc::tangent_proj(e)), qz.clone());
    let rhs = legs_lifted.as_ref().map_err(Clone::clone).and_then(|(l0, l1)| b.pair_tangent_sum(l0, l1)?.compose(&cdc::tangent_plus(e)));
    checks.eq("lift-over-zeta/preserves-sum", inst, sum_lift, rhs);
    checks.eq("lift-over-zeta/preserves-zero", inst, c(&b.zeta, &b.lambda), c(&b.zeta, &cdc::tangent_zero(e)));

    checks.eq("lift-coassociative", inst, c(&b.lambda, &cdc::vertical_lift(e)), c(&b.lambda, &cdc::cdc_t(&b.lambda)));

    // Universality of the lift.
    let kappa = b.kappa();
    checks.holds("universality/witness-exists", inst, Ok(b.witness.is_some()), || {
        let k = kappa.as_ref().map(|k| k.to_string()).unwrap_or_else(|e| e.to_string());
        format!("comparison map {k} is not an invertible fibrewise-linear map")
    });
    if let Some(rho) = &b.witness {
        let n = b.pullback_dim();
        let kr = kappa.as_ref().map_err(Clone::clone).and_then(|k| k.compose(rho));
        checks.eq("universality/comparison-then-witness", inst, kr, Ok(PolyMap::identity(e2)));
        let rk = kappa.as_ref().map_err(Clone::clone).and_then(|k| rho.compose(k));
        checks.eq("universality/witness-then-comparison", inst, rk, Ok(PolyMap::identity(n)));
    }
    let recovered = kappa.as_ref().map_err(Clone::clone).and_then(|k| k.compose(&b.pullback_inclusion()?));
    checks.eq("universality/comparison-recovers-mu", inst, recovered, b.mu());

    // Corroborating identities for μ.
    let mu = b.mu();
    checks.eq("mu/over-second-leg", inst, mu.as_ref().map_err(Clone::clone).and_then(|mu| c(mu, &cdc::tangent_proj(e))), leg(2, 1));
    let restricted = (|| b.pair_power(&[&id_e, qz.as_ref().map_err(Clone::clone)?])?.compose(mu.as_ref().map_err(Clone::clone)?))();
    checks.eq("mu/restricts-to-lift", inst, restricted, Ok(b.lambda.clone()));
    checks
}

pub(crate) fn split<T>(r: Result<(T, T)>) -> (Result<T>, Result<T>) {
    match r {
        Ok((l, r)) => (Ok(l), Ok(r)),
        Err(e) => (Err(e.clone()), Err(e)),
    }
}
