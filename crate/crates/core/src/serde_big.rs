//! Serde adapters for arbitrary-precision values.
//!
//! Integers that fit in 64 bits are written as plain JSON numbers and larger
//! ones as decimal strings; both forms are accepted when reading, so every
//! value round-trips exactly. Rationals are `{"num": .., "den": ..}` in
//! lowest terms.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Rational;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Unsigned(u64),
    Text(String),
}

impl From<&BigInt> for IntRepr {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Text(x.to_string()),
        }
    }
}

impl TryFrom<IntRepr> for BigInt {
    type Error = String;

    fn try_from(r: IntRepr) -> Result<Self, String> {
        match r {
            IntRepr::Small(v) => Ok(v.into()),
            IntRepr::Unsigned(v) => Ok(v.into()),
            IntRepr::Text(s) => s.parse().map_err(|_| format!("invalid integer `{s}`")),
        }
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::from(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        BigInt::try_from(IntRepr::deserialize(d)?).map_err(D::Error::custom)
    }
}

pub mod rational {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        num: IntRepr,
        den: IntRepr,
    }

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: x.numer().into(),
            den: x.denom().into(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let r = Repr::deserialize(d)?;
        let num = BigInt::try_from(r.num).map_err(D::Error::custom)?;
        let den = BigInt::try_from(r.den).map_err(D::Error::custom)?;
        if den <= BigInt::from(0) {
            return Err(D::Error::custom("rational denominator must be positive"));
        }
        let q = Rational::new(num, den);
        Ok(q)
    }
}
