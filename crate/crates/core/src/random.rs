//! Seeded generation of random polynomials and maps.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::scalar::Semiring;

/// The random source used everywhere; fixed algorithm so seeds are portable.
pub type Sampler = ChaCha8Rng;

pub fn sampler(seed: u64) -> Sampler {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for generated polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub max_degree: u32,
    pub coeff_bound: u64,
    pub max_terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_degree: 3, coeff_bound: 5, max_terms: 3 }
    }
}

pub fn random_poly<C: Semiring, R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: &Shape) -> Poly<C> {
    let nterms = rng.random_range(1..=shape.max_terms.max(1));
    // One coefficient per exponent vector, so every coefficient stays in range.
    let mut terms: BTreeMap<Vec<u32>, C> = BTreeMap::new();
    for _ in 0..nterms {
        let mut e = vec![0u32; nvars];
        if nvars > 0 {
            let degree = rng.random_range(0..=shape.max_degree);
            for _ in 0..degree {
                e[rng.random_range(0..nvars)] += 1;
            }
        }
        terms.insert(e, C::sample(rng, shape.coeff_bound));
    }
    Poly::from_terms(nvars, terms).expect("exponent vectors have the right length")
}

pub fn random_map<C: Semiring, R: Rng + ?Sized>(rng: &mut R, dom: usize, cod: usize, shape: &Shape) -> PolyMap<C> {
    let comps = (0..cod).map(|_| random_poly(rng, dom, shape)).collect();
    PolyMap::new(dom, comps).expect("components share the domain")
}

/// Deterministic random map from a seed.
pub fn random_polymap<C: Semiring>(dom: usize, cod: usize, max_degree: u32, coeff_bound: u64, seed: u64) -> PolyMap<C> {
    let shape = Shape { max_degree, coeff_bound, ..Shape::default() };
    random_map(&mut sampler(seed), dom, cod, &shape)
}

/// Random point `0 -> n` (a constant map).
pub fn random_point<C: Semiring, R: Rng + ?Sized>(rng: &mut R, dom: usize, n: usize, bound: u64) -> PolyMap<C> {
    let values: Vec<C> = (0..n).map(|_| C::sample(rng, bound)).collect();
    PolyMap::constant(dom, &values)
}

/// Random matrix with entries from the bounded semiring range.
pub fn random_matrix<C: Semiring, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: u64) -> Vec<Vec<C>> {
    (0..rows).map(|_| (0..cols).map(|_| C::sample(rng, bound)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Natural, Rational};

    #[test]
    fn degree_zero_gives_constants() {
        let f = random_polymap::<Rational>(1, 1, 0, 5, 3);
        assert_eq!(f.degree(), 0);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_polymap::<Rational>(2, 3, 3, 5, 42), random_polymap::<Rational>(2, 3, 3, 5, 42));
        let f = random_polymap::<Natural>(2, 3, 3, 5, 42);
        assert_eq!((f.dom(), f.cod()), (2, 3));
    }

    #[test]
    fn respects_bounds() {
        for seed in 0..20 {
            let f = random_polymap::<Rational>(3, 2, 2, 4, seed);
            assert!(f.degree() <= 2);
            for c in f.components() {
                for (_, k) in c.terms() {
                    assert!(k.to_f64().abs() <= 4.0);
                }
            }
        }
    }
}
