//! Arbitrary-precision rationals and their text/JSON forms.
//!
//! Values are always kept in canonical form (reduced, positive denominator),
//! so structural equality is numeric equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"-3/7"` or `"12"`. Denominator zero is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    trimmed
        .parse::<Rational>()
        .map_err(|_| Error::ParseRational(text.to_string()))
}

/// `"p/q"`, or the bare integer when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn ceil_to_i64(value: &Rational) -> Option<i64> {
    value.ceil().to_integer().to_i64()
}

pub fn floor_to_i64(value: &Rational) -> Option<i64> {
    value.floor().to_integer().to_i64()
}

/// Serde adapter: integers that fit in `i64` are written as JSON numbers,
/// everything else as a `"p/q"` string. Both forms are accepted on input.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Rational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        if value.is_integer() {
            if let Some(v) = value.to_integer().to_i64() {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        d.deserialize_any(RatVisitor)
    }

    pub(crate) struct RatVisitor;

    impl<'de> Visitor<'de> for RatVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an integer or a \"p/q\" string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
            Ok(int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
            Ok(Rational::from_integer(BigInt::from(v)))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    struct Wrap<'a>(&'a Rational);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serde_rat::serialize(self.0, s)
        }
    }

    struct Owned(Rational);

    impl<'de> serde::Deserialize<'de> for Owned {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            serde_rat::deserialize(d).map(Owned)
        }
    }

    pub fn serialize<S: Serializer>(
        values: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&Wrap(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let owned: Vec<Owned> = serde::Deserialize::deserialize(d)?;
        Ok(owned.into_iter().map(|o| o.0).collect())
    }
}
