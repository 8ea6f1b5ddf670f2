//! Constructions of bundles: the basic examples, the tangent bundle of a
//! bundle, pullbacks, Whitney sums and transport along isomorphisms.

use super::{make_bundle, slice, DiffBundle};
use crate::cdc;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::scalar::Semiring;

/// `𝟙_M`: every structure map is an identity and the lift is `0_M`.
pub fn trivial<C: Semiring>(m: usize) -> DiffBundle<C> {
    let id = PolyMap::identity(m);
    make_bundle(format!("trivial({m})"), m, 0, id.clone(), id, cdc::tangent_zero(m), None).expect("consistent dimensions")
}

/// `M × R^k → M` with fibrewise addition and `λ(x, a) = ((0, a), (x, 0))`.
///
/// With `corrupted` set the lift keeps the fibre point, `λ(x, a) = ((0, a), (x, a))`.
pub fn standard<C: Semiring>(m: usize, k: usize, corrupted: bool) -> DiffBundle<C> {
    let e = m + k;
    let n2 = m + 2 * k;
    let var = |n: usize, i: usize| Poly::var(n, i).expect("in range");
    let mut sigma: Vec<Poly<C>> = (0..m).map(|i| var(n2, i)).collect();
    sigma.extend((0..k).map(|j| var(n2, m + j).add(&var(n2, m + k + j)).expect("same ring")));
    let mut zeta: Vec<Poly<C>> = (0..m).map(|i| var(m, i)).collect();
    zeta.extend((0..k).map(|_| Poly::zero(m)));
    let mut lambda: Vec<Poly<C>> = (0..m).map(|_| Poly::zero(e)).collect();
    lambda.extend((m..e).map(|i| var(e, i)));
    lambda.extend((0..m).map(|i| var(e, i)));
    lambda.extend((m..e).map(|i| if corrupted { var(e, i) } else { Poly::zero(e) }));
    let label = if corrupted { format!("standard({m},{k}) with corrupted lift") } else { format!("standard({m},{k})") };
    make_bundle(
        label,
        m,
        k,
        PolyMap::new(n2, sigma).expect("components share the domain"),
        PolyMap::new(m, zeta).expect("components share the domain"),
        PolyMap::new(e, lambda).expect("components share the domain"),
        None,
    )
    .expect("consistent dimensions")
}

/// `(p_M, +, 0, ℓ)` on `T(M)`, trivialized by `(u, x) ↦ (x, u)`.
pub fn tangent_bundle<C: Semiring>(m: usize) -> DiffBundle<C> {
    let swap_in: Vec<usize> = (m..2 * m).chain(0..m).collect();
    let t = PolyMap::select(2 * m, &swap_in).expect("in range");
    let t_inv = t.clone();
    // (x, u1, u2) ↦ (u1, u2, x), then +.
    let regroup: Vec<usize> = (m..3 * m).chain(0..m).collect();
    let sigma = PolyMap::select(3 * m, &regroup).expect("in range").compose(&cdc::tangent_plus(m)).expect("composable");
    make_bundle(format!("tangent({m})"), m, m, sigma, cdc::tangent_zero(m), cdc::vertical_lift(m), Some((t, t_inv)))
        .expect("consistent dimensions")
}

/// `T(B) = (T(q), T(σ), T(ζ), T(λ) c)` over `T(M)`.
///
/// The trivialization is `T(t)` regrouped to `((dx, x), (da, a))`.
pub fn tangent_of_bundle<C: Semiring>(b: &DiffBundle<C>) -> Result<DiffBundle<C>> {
    let (m, k, e) = (b.base(), b.fibre(), b.total());
    // (dx, da, x, a) → (dx, x, da, a)
    let regroup: Vec<usize> = (0..m).chain(m + k..2 * m + k).chain(m..m + k).chain(2 * m + k..2 * e).collect();
    let regroup = PolyMap::select(2 * e, &regroup)?;
    let ungroup = PolyMap::select(2 * e, &inverse_perm(&regroup.as_selection().expect("selection")))?;
    let t = b.tangent_triv().compose(&regroup)?;
    let t_inv = ungroup.compose(&cdc::cdc_t(b.triv_inv()))?;
    // (dx, x, da1, a1, da2, a2) → (dx, da1, da2, x, a1, a2)
    let n = 2 * m + 4 * k;
    let blocks: [(usize, usize); 6] = [(0, m), (2 * m, k), (2 * m + 2 * k, k), (m, m), (2 * m + k, k), (2 * m + 3 * k, k)];
    let idx: Vec<usize> = blocks.iter().flat_map(|&(lo, len)| lo..lo + len).collect();
    let sigma = PolyMap::select(n, &idx)?.compose(&cdc::cdc_t(b.sigma()))?;
    let lambda = cdc::cdc_t(b.lambda()).compose(&cdc::canonical_flip(e))?;
    make_bundle(format!("T({})", b.label), 2 * m, 2 * k, sigma, cdc::cdc_t(b.zeta()), lambda, Some((t, t_inv)))
}

fn inverse_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `f*(B)` together with the linear morphism `f*_E: f*(E) → E` over `f`.
#[derive(Clone, Debug)]
pub struct PullbackBundle<C> {
    pub bundle: DiffBundle<C>,
    pub over: PolyMap<C>,
    pub into_total: PolyMap<C>,
}

/// The pullback of `b` along `f: X → M`, with total space `(x', a)`.
pub fn pullback_bundle<C: Semiring>(f: &PolyMap<C>, b: &DiffBundle<C>) -> Result<PullbackBundle<C>> {
    if f.cod() != b.base() {
        return Err(Error::BaseMismatch(format!("map lands in dimension {}, bundle base is {}", f.cod(), b.base())));
    }
    let (x, k) = (f.dom(), b.fibre());
    let e = x + k;
    // (x', rest) ↦ (f(x'), rest) on any carrier with x' first.
    let along = |rest: usize| -> Result<PolyMap<C>> { Ok(f.product(&PolyMap::identity(rest))) };
    let base_of = |n: usize| slice::<C>(n, 0, x);

    let sigma_fibre = b.fibre_part(&along(2 * k)?.compose(b.sigma())?)?;
    let sigma = base_of(x + 2 * k).pair(&sigma_fibre)?;
    let zeta = PolyMap::identity(x).pair(&b.fibre_part(&f.compose(b.zeta())?)?)?;
    let into_total = along(k)?.compose(b.triv_inv())?;
    let [_, da, _, a] = b.tangent_blocks(&into_total.compose(b.lambda())?)?;
    let lambda = PolyMap::concat(&[&PolyMap::zero(e, x), &da, &base_of(e), &a])?;
    let bundle = make_bundle(format!("pullback of {}", b.label), x, k, sigma, zeta, lambda, None)?;
    Ok(PullbackBundle { bundle, over: f.clone(), into_total })
}

/// `B1 ⊕ B2` together with the two projections, each over the identity.
#[derive(Clone, Debug)]
pub struct WhitneySum<C> {
    pub bundle: DiffBundle<C>,
    pub projections: [PolyMap<C>; 2],
}

/// The fibre product over a common base, with total space `(x, a, b)`.
pub fn whitney_sum<C: Semiring>(b1: &DiffBundle<C>, b2: &DiffBundle<C>) -> Result<WhitneySum<C>> {
    if b1.base() != b2.base() {
        return Err(Error::BaseMismatch(format!("bases have dimensions {} and {}", b1.base(), b2.base())));
    }
    let (m, k1, k2) = (b1.base(), b1.fibre(), b2.fibre());
    let e = m + k1 + k2;
    let n2 = m + 2 * (k1 + k2);
    let x = slice::<C>(n2, 0, m);
    let pick = |n: usize, blocks: &[(usize, usize)]| -> Result<PolyMap<C>> {
        PolyMap::select(n, &blocks.iter().flat_map(|&(lo, len)| lo..lo + len).collect::<Vec<_>>())
    };
    // Carrier (x, a1, b1, a2, b2).
    let s1 = pick(n2, &[(0, m), (m, k1), (m + k1 + k2, k1)])?.compose(b1.sigma())?;
    let s2 = pick(n2, &[(0, m), (m + k1, k2), (m + 2 * k1 + k2, k2)])?.compose(b2.sigma())?;
    let sigma = PolyMap::concat(&[&x, &b1.fibre_part(&s1)?, &b2.fibre_part(&s2)?])?;
    let zeta = PolyMap::concat(&[&PolyMap::identity(m), &b1.fibre_part(b1.zeta())?, &b2.fibre_part(b2.zeta())?])?;
    let pr1 = pick(e, &[(0, m), (m, k1)])?.compose(b1.triv_inv())?;
    let pr2 = pick(e, &[(0, m), (m + k1, k2)])?.compose(b2.triv_inv())?;
    let [dx, da, px, a] = b1.tangent_blocks(&pr1.compose(b1.lambda())?)?;
    let [_, db, _, bb] = b2.tangent_blocks(&pr2.compose(b2.lambda())?)?;
    let lambda = PolyMap::concat(&[&dx, &da, &db, &px, &a, &bb])?;
    let bundle = make_bundle(format!("{} ⊕ {}", b1.label, b2.label), m, k1 + k2, sigma, zeta, lambda, None)?;
    Ok(WhitneySum { bundle, projections: [pr1, pr2] })
}

/// The bundle structure moved along an isomorphism `φ: E → E'` with inverse `ψ`.
///
/// `(φ, 1)` and `(ψ, 1)` are then mutually inverse bundle morphisms.
pub fn transport<C: Semiring>(b: &DiffBundle<C>, phi: &PolyMap<C>, psi: &PolyMap<C>) -> Result<DiffBundle<C>> {
    let e = b.total();
    if !phi.compose(psi)?.is_identity() || !psi.compose(phi)?.is_identity() || phi.dom() != e {
        return Err(Error::NotInvertible(format!("{phi} and {psi} are not mutually inverse on {e} coordinates")));
    }
    let t = psi.compose(b.triv())?;
    let t_inv = b.triv_inv().compose(phi)?;
    let lambda = psi.compose(b.lambda())?.compose(&cdc::cdc_t(phi))?;
    make_bundle(
        format!("transport of {}", b.label),
        b.base(),
        b.fibre(),
        b.sigma().compose(phi)?,
        b.zeta().compose(phi)?,
        lambda,
        Some((t, t_inv)),
    )
}
