//! Exact rational scalars.
//!
//! Every identity in this crate is checked over the rationals. [`Scalar`] is a
//! thin newtype over [`BigRational`] that fixes the textual form used in
//! reports (`"p/q"`, with `q` omitted when it is 1) and adds the handful of
//! helpers the formula evaluators need (signed powers, checked inversion).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// `p/q`, or `None` when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Option<Self> {
        if q == 0 {
            return None;
        }
        Some(Scalar(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Scalar(BigRational::new(numer, denom)))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Scalar(&self.0 / &rhs.0))
        }
    }

    /// Integer power with a possibly negative exponent. `0^0 = 1`; a negative
    /// power of zero is a domain error.
    pub fn powi(&self, exp: i64) -> Result<Self, Error> {
        if exp >= 0 {
            return Ok(self.pow_u(exp as u64));
        }
        let inv = self
            .recip()
            .ok_or_else(|| Error::Domain(format!("negative power {exp} of zero")))?;
        Ok(inv.pow_u(exp.unsigned_abs()))
    }

    pub fn pow_u(&self, exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Bits needed for numerator plus denominator; a rough size measure.
    pub fn bit_size(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when parsing a `"p/q"` string fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScalarError(s.to_string());
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        Scalar::from_big(p, q).ok_or_else(bad)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar(v)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $op:tt) => {
        impl $Trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $Trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
        impl $Trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl $Trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
// Panics on a zero divisor, like the underlying type. Kernel code checks first.
forward_binop!(Div, div, /);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign<Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

// Products multiply numerators and denominators separately and reduce once;
// for long products this beats a gcd per factor.
impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.collect::<Vec<_>>().iter().product()
    }
}

impl<'a> Product<&'a Scalar> for Scalar {
    fn product<I: Iterator<Item = &'a Scalar>>(iter: I) -> Self {
        let mut p = BigInt::one();
        let mut q = BigInt::one();
        for x in iter {
            if x.is_zero() {
                return Scalar::zero();
            }
            p *= x.numer();
            q *= x.denom();
        }
        Scalar(BigRational::new(p, q))
    }
}

/// Shorthand for `Scalar::ratio(p, q).unwrap()` in tests and examples.
///
/// Panics when `q == 0`.
pub fn q(p: i64, q: i64) -> Scalar {
    Scalar::ratio(p, q).expect("zero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(-3, 6).to_string(), "-1/2");
        assert_eq!(q(0, 5).to_string(), "0");
    }

    #[test]
    fn lowest_terms_and_sign() {
        let x = q(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
        assert!(Scalar::ratio(1, 0).is_none());
    }

    #[test]
    fn parse_roundtrip_and_rejects() {
        assert_eq!("7/21".parse::<Scalar>().unwrap(), q(1, 3));
        assert_eq!("-5".parse::<Scalar>().unwrap(), q(-5, 1));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn signed_powers() {
        assert_eq!(q(2, 3).powi(-2).unwrap(), q(9, 4));
        assert_eq!(Scalar::zero().powi(0).unwrap(), Scalar::one());
        assert!(Scalar::zero().powi(-1).is_err());
    }

    #[test]
    fn serde_as_string() {
        let s = serde_json::to_string(&q(-7, 2)).unwrap();
        assert_eq!(s, "\"-7/2\"");
        let back: Scalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(-7, 2));
    }

    proptest! {
        #[test]
        fn text_roundtrip(p in -10_000i64..10_000, d in 1i64..10_000) {
            let x = q(p, d);
            prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }

        #[test]
        fn field_inverse(p in -500i64..500, d in 1i64..500) {
            let x = q(p, d);
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.recip().unwrap(), Scalar::one());
        }
    }
}
