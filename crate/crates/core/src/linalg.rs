//! Exact inversion of small square matrices.

use crate::polymap::PolyMap;
use crate::scalar::{Rational, Semiring};

/// Inverse of a square matrix by Gauss-Jordan elimination over the rationals.
///
/// Returns `None` when the matrix is singular, or when some entry of the
/// inverse does not lie in the semiring `C` (e.g. a negative entry in
/// natural mode).
pub fn invert<C: Semiring>(mat: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = mat.len();
    if mat.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<Rational>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(Semiring::to_rational).collect();
            r.extend((0..n).map(|j| if i == j { <Rational as Semiring>::one() } else { <Rational as Semiring>::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !Semiring::is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        let inv = <Rational as Semiring>::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !Semiring::is_zero(&a[r][col]) {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &factor * p;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| row[n..].iter().map(C::from_rational).collect::<Option<Vec<C>>>())
        .collect()
}

/// For `f(x, v) = M v + c(x)` with the first `fixed` variables `x` and a
/// constant invertible `M`, the map `(x, w) ↦ M⁻¹ (w − c(x))`.
///
/// `None` when `f` has another shape, `M` is singular, or the inverse needs
/// scalars outside `C`.
pub fn affine_inverse<C: Semiring>(f: &PolyMap<C>, fixed: usize) -> Option<PolyMap<C>> {
    let n = f.dom();
    let r = n.checked_sub(fixed)?;
    if f.cod() != r {
        return None;
    }
    let at_zero = PolyMap::proj(n, 0, fixed).ok()?.pair(&PolyMap::zero(n, r)).ok()?;
    let offset = at_zero.compose(f).ok()?;
    let vars: Vec<usize> = (fixed..n).collect();
    let mat = f.sub(&offset)?.linear_matrix(&vars)?;
    let inv = invert(&mat)?;
    let shifted = PolyMap::proj(n, fixed, n).ok()?.sub(&offset)?;
    shifted.compose(&PolyMap::from_matrix(r, &(0..r).collect::<Vec<_>>(), &inv).ok()?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Natural;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn inverts_rational_matrix() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
    }

    #[test]
    fn affine_inverse_undoes_shifts() {
        use crate::parse::parse_polymap;
        let f: PolyMap<Rational> = parse_polymap("2*x1 + x0^2; x1 + x2 - 1", Some(3)).unwrap();
        let g = affine_inverse(&f, 1).unwrap();
        let back = PolyMap::proj(3, 0, 1).unwrap().pair(&f).unwrap().compose(&g).unwrap();
        assert_eq!(back, PolyMap::proj(3, 1, 3).unwrap());
        let bent: PolyMap<Rational> = parse_polymap("x0*x1; x2", Some(3)).unwrap();
        assert!(affine_inverse(&bent, 1).is_none());
        let shifted: PolyMap<Natural> = parse_polymap("x0 + 1", Some(1)).unwrap();
        assert!(affine_inverse(&shifted, 0).is_none());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(invert(&m).is_none());
    }

    #[test]
    fn natural_inverse_must_stay_natural() {
        let perm = vec![
            vec![Natural::from(0u32), Natural::from(1u32)],
            vec![Natural::from(1u32), Natural::from(0u32)],
        ];
        assert_eq!(invert(&perm).unwrap(), perm);
        let shear = vec![
            vec![Natural::from(1u32), Natural::from(1u32)],
            vec![Natural::from(0u32), Natural::from(1u32)],
        ];
        assert!(invert(&shear).is_none());
    }

    #[test]
    fn empty_matrix_is_invertible() {
        let m: Vec<Vec<Rational>> = Vec::new();
        assert_eq!(invert(&m).unwrap(), Vec::<Vec<Rational>>::new());
    }
}
