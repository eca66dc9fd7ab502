//! Exact rationals with an `i64` fast path.
//!
//! Values are kept in the small representation whenever numerator and
//! denominator fit; arithmetic that would overflow is redone with big
//! integers and demoted again afterwards. The representation is canonical,
//! so derived equality and hashing are value equality and value hashing.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn demote(big: BigRational) -> Rational {
    match (big.numer().to_i64(), big.denom().to_i64()) {
        // i64::MIN is excluded so that negation never overflows
        (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
            Rational(Repr::Small(Ratio::new_raw(n, d)))
        }
        _ => Rational(Repr::Big(big)),
    }
}

fn small_ok(r: Ratio<i64>) -> Rational {
    if *r.numer() == i64::MIN || *r.denom() == i64::MIN {
        demote(BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
    } else {
        Rational(Repr::Small(r))
    }
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        if numer == i64::MIN || denom == i64::MIN {
            return demote(BigRational::new(BigInt::from(numer), BigInt::from(denom)));
        }
        Rational(Repr::Small(Ratio::new(numer, denom)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        demote(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(n, 1)
    }

    pub fn zero() -> Self {
        Rational(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(Ratio::from_integer(1)))
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(_) => false,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// The value as an `i64` if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => Some(*r.numer()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(r) => small_ok(r.recip()),
            Repr::Big(r) => demote(r.recip()),
        })
    }

    /// Rough bit size of numerator and denominator, used for pivot choice.
    pub fn height(&self) -> u64 {
        match &self.0 {
            Repr::Small(r) => {
                (64 - r.numer().unsigned_abs().leading_zeros() as u64)
                    + (64 - r.denom().unsigned_abs().leading_zeros() as u64)
            }
            Repr::Big(r) => r.numer().bits() + r.denom().bits(),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Repr::Big(r) => r.clone(),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $op:tt) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(b) {
                        return small_ok(r);
                    }
                }
                demote(self.to_big() $op rhs.to_big())
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = a.checked_div(b) {
                return small_ok(r);
            }
        }
        demote(self.to_big() / rhs.to_big())
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(r) => Rational(Repr::Small(-r)),
            Repr::Big(r) => demote(-r),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                let lhs = *a.numer() as i128 * *b.denom() as i128;
                let rhs = *b.numer() as i128 * *a.denom() as i128;
                lhs.cmp(&rhs)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{r}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_bigints(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), BigInt::from(2));
        assert_eq!(Rational::new(0, -5), Rational::zero());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_)));
        let min = Rational::new(i64::MIN, 1);
        assert_eq!(-(-&min), min);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    fn arb() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
            }
        }

        #[test]
        fn ordering_matches_subtraction(a in arb(), b in arb()) {
            let diff = &a - &b;
            let expected = if diff.is_zero() { Ordering::Equal }
                else if diff.is_negative() { Ordering::Less } else { Ordering::Greater };
            prop_assert_eq!(a.cmp(&b), expected);
        }
    }
}
