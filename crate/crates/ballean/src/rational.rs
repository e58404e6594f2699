//! Exact rational scalars for ground coordinates and interval endpoints.
//!
//! All arithmetic is arbitrary precision; the wire form is the canonical
//! string `p` (integers) or `p/q` (reduced, q > 1), never a float.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p / q`, reduced. Fails on a zero denominator.
    pub fn ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    /// 2^n as an exact integer.
    pub fn two_pow(n: u32) -> Self {
        Rational(BigRational::from_integer(BigInt::one() << n))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_i64(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        let n = self.0.to_integer();
        i64::try_from(n).ok()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let r = BigRational::from_str(s.trim())
            .map_err(|e| Error::Invalid(format!("bad rational {s:?}: {e}")))?;
        Ok(Rational(r))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rational::parse(s)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct RationalVisitor;

impl<'de> de::Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational as \"p/q\" string or integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        Rational::parse(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        i64::try_from(v)
            .map(Rational::from_int)
            .map_err(|_| E::custom("integer too large"))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(Rational::from_int(7).to_string(), "7");
        assert_eq!(Rational::ratio(1, 2).unwrap().to_string(), "1/2");
        assert_eq!(Rational::ratio(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(Rational::ratio(-3, 6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-4", "7/3", "-1/2"] {
            assert_eq!(Rational::parse(s).unwrap().to_string(), s);
        }
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
    }

    #[test]
    fn ordering_and_arithmetic() {
        let half = Rational::ratio(1, 2).unwrap();
        let third = Rational::ratio(1, 3).unwrap();
        assert!(third < half);
        assert_eq!(&half + &third, Rational::ratio(5, 6).unwrap());
        assert_eq!(&half - &third, Rational::ratio(1, 6).unwrap());
        assert_eq!(Rational::two_pow(5), Rational::from_int(32));
    }
}
