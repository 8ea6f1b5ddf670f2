//! The Cartesian differential structure on polynomial maps and the tangent
//! structure it induces.
//!
//! Layout convention: `T(m) = 2m` with the tangent block `u` first and the
//! point block `x` last, so `T(f) = ⟨D f, π1 f⟩` literally. For `T²(m) = 4m`
//! the four blocks are written `(a, b, c, d)`: `(a, b)` is the tangent block
//! of `T(m)` and `(c, d)` its point block.

use crate::error::Result;
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::scalar::Semiring;

/// `D f (u, x) = Σ_i ∂f/∂x_i (x) · u_i`, with domain `2·dom`.
pub fn cdc_d<C: Semiring>(f: &PolyMap<C>) -> PolyMap<C> {
    let m = f.dom();
    let n2 = 2 * m;
    let to_point: Vec<usize> = (m..n2).collect();
    let comps = f
        .components()
        .iter()
        .map(|fj| {
            let mut acc = Poly::zero(n2);
            for i in 0..m {
                let d = fj.partial_derivative(i).expect("index in range");
                if d.is_zero() {
                    continue;
                }
                let d = d.reindex(n2, &to_point).expect("in range");
                let term = d.mul(&Poly::var(n2, i).expect("in range")).expect("same ring");
                acc = acc.add(&term).expect("same ring");
            }
            acc
        })
        .collect();
    PolyMap::from_parts(n2, comps)
}

/// `T f = ⟨D f, π1 f⟩`.
pub fn cdc_t<C: Semiring>(f: &PolyMap<C>) -> PolyMap<C> {
    let m = f.dom();
    let d = cdc_d(f);
    let point: Vec<usize> = (m..2 * m).collect();
    let mut comps = d.into_components();
    comps.extend(f.components().iter().map(|c| c.reindex(2 * m, &point).expect("in range")));
    PolyMap::from_parts(2 * m, comps)
}

fn block(lo: usize, len: usize) -> impl Iterator<Item = usize> {
    lo..lo + len
}

/// `p(u, x) = x`.
pub fn tangent_proj<C: Semiring>(m: usize) -> PolyMap<C> {
    PolyMap::select_unchecked(2 * m, &block(m, m).collect::<Vec<_>>())
}

/// `0(x) = (0, x)`.
pub fn tangent_zero<C: Semiring>(m: usize) -> PolyMap<C> {
    let mut comps = vec![Poly::zero(m); m];
    comps.extend((0..m).map(|i| Poly::var(m, i).expect("in range")));
    PolyMap::from_parts(m, comps)
}

/// `+(u1, u2, x) = (u1 + u2, x)` on the carrier of `T₂(m)`.
pub fn tangent_plus<C: Semiring>(m: usize) -> PolyMap<C> {
    let n = 3 * m;
    let mut comps: Vec<Poly<C>> = (0..m)
        .map(|i| {
            Poly::var(n, i)
                .expect("in range")
                .add(&Poly::var(n, m + i).expect("in range"))
                .expect("same ring")
        })
        .collect();
    comps.extend(block(2 * m, m).map(|i| Poly::var(n, i).expect("in range")));
    PolyMap::from_parts(n, comps)
}

/// `ℓ(u, x) = (u, 0, 0, x)`.
pub fn vertical_lift<C: Semiring>(m: usize) -> PolyMap<C> {
    let n = 2 * m;
    let var = |i| Poly::var(n, i).expect("in range");
    let mut comps: Vec<Poly<C>> = (0..m).map(var).collect();
    comps.extend((0..2 * m).map(|_| Poly::zero(n)));
    comps.extend(block(m, m).map(var));
    PolyMap::from_parts(n, comps)
}

/// `c(a, b, c, d) = (a, c, b, d)`.
pub fn canonical_flip<C: Semiring>(m: usize) -> PolyMap<C> {
    let idx: Vec<usize> = block(0, m).chain(block(2 * m, m)).chain(block(m, m)).chain(block(3 * m, m)).collect();
    PolyMap::select_unchecked(4 * m, &idx)
}

/// The Cartesian exchange `(a, b, c, d) ↦ (a, c, b, d)` on four equal blocks;
/// as a coordinate map it coincides with the flip.
pub fn exchange<C: Semiring>(m: usize) -> PolyMap<C> {
    canonical_flip(m)
}

/// `π_i`-style block projection out of `blocks` equal blocks of width `m`.
pub fn block_proj<C: Semiring>(m: usize, blocks: usize, which: usize) -> Result<PolyMap<C>> {
    PolyMap::proj(m * blocks, which * m, (which + 1) * m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polymap;
    use crate::random::{random_polymap, sampler};
    use crate::scalar::{Natural, Rational};
    use rand::Rng;

    fn pm(s: &str, dom: usize) -> PolyMap<Rational> {
        parse_polymap(s, Some(dom)).unwrap()
    }

    #[test]
    fn derivative_of_square() {
        assert_eq!(cdc_d(&pm("x0^2", 1)), pm("2*x0*x1", 2));
    }

    /// Central finite differences as an independent oracle for `D f`.
    #[test]
    fn derivative_matches_finite_differences() {
        let mut rng = sampler(11);
        for seed in 0..10u64 {
            let f = random_polymap::<Rational>(2, 2, 3, 5, seed);
            let df = cdc_d(&f);
            for _ in 0..10 {
                let x: Vec<f64> = (0..2).map(|_| rng.random_range(-2.0..2.0)).collect();
                let u: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..1.0)).collect();
                let h = 1e-6;
                let plus: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a + h * b).collect();
                let minus: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a - h * b).collect();
                let fd: Vec<f64> = f
                    .eval_f64(&plus)
                    .iter()
                    .zip(f.eval_f64(&minus))
                    .map(|(a, b)| (a - b) / (2.0 * h))
                    .collect();
                let ux: Vec<f64> = u.iter().chain(&x).copied().collect();
                for (a, b) in df.eval_f64(&ux).iter().zip(&fd) {
                    assert!((a - b).abs() <= 1e-4 * (1.0 + a.abs()), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn derivative_of_identity_and_projection() {
        assert_eq!(cdc_d(&PolyMap::<Rational>::identity(2)), PolyMap::proj(4, 0, 2).unwrap());
        let pi1 = PolyMap::<Rational>::proj(2, 1, 2).unwrap();
        assert_eq!(cdc_d(&pi1), PolyMap::select(4, &[1]).unwrap());
    }

    #[test]
    fn tangent_of_square() {
        assert_eq!(cdc_t(&pm("x0^2", 1)), pm("2*x0*x1; x1^2", 2));
        assert_eq!(cdc_t(&PolyMap::<Rational>::identity(3)), PolyMap::identity(6));
    }

    #[test]
    fn tangent_is_functorial_on_example() {
        let f = pm("x0 + 1", 1);
        let g = pm("x0^2", 1);
        let lhs = cdc_t(&f.compose(&g).unwrap());
        let rhs = cdc_t(&f).compose(&cdc_t(&g)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn structural_maps_at_dim_one() {
        assert_eq!(vertical_lift::<Rational>(1), pm("x0; 0; 0; x1", 2));
        assert_eq!(canonical_flip::<Rational>(1), pm("x0; x2; x1; x3", 4));
        assert_eq!(tangent_plus::<Rational>(1), pm("x0 + x1; x2", 3));
        assert_eq!(tangent_zero::<Rational>(1), pm("0; x0", 1));
        assert_eq!(tangent_proj::<Rational>(1), pm("x1", 2));
    }

    #[test]
    fn natural_derivative_keeps_coefficients_natural() {
        let f: PolyMap<Natural> = parse_polymap("3*x0^2*x1", Some(2)).unwrap();
        assert_eq!(cdc_d(&f).to_string(), "6*x0*x2*x3 + 3*x1*x2^2");
    }
}
