//! Serde helpers for exact rationals: JSON integers or `"p/q"` strings.
//!
//! Integer strings (`"7"`) are accepted too. JSON floats are converted to the
//! exact binary rational they denote.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::linalg::Rational;

/// Newtype carrying the JSON encoding of a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JsonRational(pub Rational);

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(i) = self.0.numer().to_i64() {
                return s.serialize_i64(i);
            }
        }
        s.serialize_str(&format_rational(&self.0))
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = JsonRational;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRational, E> {
        Ok(JsonRational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRational, E> {
        Ok(JsonRational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonRational, E> {
        BigRational::from_f64(v).map(JsonRational).ok_or_else(|| E::custom(format!("non-finite number {v}")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRational, E> {
        parse_rational(v).map(JsonRational).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

pub mod scalar {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        JsonRational(r.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Ok(JsonRational::deserialize(d)?.0)
    }
}

pub mod vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<JsonRational> = v.iter().cloned().map(JsonRational).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<JsonRational>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}

pub mod vectors {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Vec<JsonRational>> = v.iter().map(|r| r.iter().cloned().map(JsonRational).collect()).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Ok(Vec::<Vec<JsonRational>>::deserialize(d)?.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
    }
}

/// `{"id": [r, ...]}` maps.
pub mod vector_map {
    use super::*;
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        let w: BTreeMap<&String, Vec<JsonRational>> = m.iter().map(|(k, v)| (k, to_json_vec(v))).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Vec<Rational>>, D::Error> {
        let w = BTreeMap::<String, Vec<JsonRational>>::deserialize(d)?;
        Ok(w.into_iter().map(|(k, v)| (k, v.into_iter().map(|x| x.0).collect())).collect())
    }
}

/// `{"id": [[r, ...], ...]}` maps.
pub mod vectors_map {
    use super::*;
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Vec<Vec<Rational>>>, s: S) -> Result<S::Ok, S::Error> {
        let w: BTreeMap<&String, Vec<Vec<JsonRational>>> =
            m.iter().map(|(k, v)| (k, v.iter().map(|r| to_json_vec(r)).collect())).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Vec<Vec<Rational>>>, D::Error> {
        let w = BTreeMap::<String, Vec<Vec<JsonRational>>>::deserialize(d)?;
        Ok(w.into_iter().map(|(k, v)| (k, v.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())).collect())
    }
}

pub fn to_json_vec(v: &[Rational]) -> Vec<JsonRational> {
    v.iter().cloned().map(JsonRational).collect()
}
