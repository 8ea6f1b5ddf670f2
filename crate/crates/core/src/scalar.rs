//! Scalar semirings for polynomial coefficients.
//!
//! Two modes are supported: exact rationals (a field, so negatives exist) and
//! natural numbers (a commutative semiring without negation). Every other
//! type in the crate is generic over [`Semiring`], so natural-mode code simply
//! has no subtraction available to call.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;
pub type Natural = BigUint;

/// Which scalar semiring a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Natural,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Natural => "natural",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Mode::Rational),
            "natural" => Ok(Mode::Natural),
            other => Err(format!("unknown scalar mode `{other}` (expected rational|natural)")),
        }
    }
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A commutative semiring of exact scalars.
pub trait Semiring:
    Clone + PartialEq + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_u64(n: u64) -> Self;

    /// Additive inverse, when the semiring has one.
    fn negate(&self) -> Option<Self>;

    fn to_rational(&self) -> BigRational;

    /// Embed a rational back into the semiring, if it lies there.
    fn from_rational(r: &BigRational) -> Option<Self>;

    fn to_f64(&self) -> f64 {
        let r = self.to_rational();
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    /// Uniform integer sample from the bounded range of the semiring:
    /// `[0, bound]` for naturals, `[-bound, bound]` when negatives exist.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self;

    /// True when the value is strictly below zero (never, for naturals).
    fn is_negative(&self) -> bool {
        Signed::is_negative(&self.to_rational())
    }
}

impl Semiring for BigRational {
    const MODE: Mode = Mode::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self {
        let b = bound as i64;
        BigRational::from_integer(BigInt::from(rng.random_range(-b..=b)))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Semiring for BigUint {
    const MODE: Mode = Mode::Natural;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_u64(n: u64) -> Self {
        BigUint::from(n)
    }
    fn negate(&self) -> Option<Self> {
        Zero::is_zero(self).then(<BigUint as Zero>::zero)
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from_biguint(Sign::Plus, self.clone()))
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        if !r.is_integer() || Signed::is_negative(r) {
            return None;
        }
        r.to_integer().to_biguint()
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self {
        BigUint::from(rng.random_range(0..=bound))
    }
    fn is_negative(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_lowest_terms() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn natural_has_no_negation() {
        assert_eq!(Natural::from_u64(3).negate(), None);
        assert_eq!(<Natural as Semiring>::zero().negate(), Some(<Natural as Semiring>::zero()));
        assert_eq!(Natural::from_rational(&rat(1, 2)), None);
        assert_eq!(Natural::from_rational(&rat(-2, 1)), None);
        assert_eq!(Natural::from_rational(&rat(4, 2)), Some(Natural::from_u64(2)));
    }

    fn rational_strategy() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| rat(n, d))
    }

    fn natural_strategy() -> impl Strategy<Value = Natural> {
        (0u64..40).prop_map(Natural::from_u64)
    }

    macro_rules! semiring_laws {
        ($name:ident, $strategy:expr) => {
            mod $name {
                use super::*;
                proptest! {
                    #[test]
                    fn add_assoc_comm(a in $strategy, b in $strategy, c in $strategy) {
                        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                        prop_assert_eq!(a.add(&b), b.add(&a));
                    }
                    #[test]
                    fn mul_assoc_comm(a in $strategy, b in $strategy, c in $strategy) {
                        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                        prop_assert_eq!(a.mul(&b), b.mul(&a));
                    }
                    #[test]
                    fn distributive(a in $strategy, b in $strategy, c in $strategy) {
                        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                    }
                    #[test]
                    fn identities(a in $strategy) {
                        prop_assert_eq!(a.add(&Semiring::zero()), a.clone());
                        prop_assert_eq!(a.mul(&Semiring::one()), a.clone());
                        prop_assert!(Semiring::is_zero(&a.mul(&Semiring::zero())));
                    }
                }
            }
        };
    }

    semiring_laws!(rational_laws, rational_strategy());
    semiring_laws!(natural_laws, natural_strategy());
}
