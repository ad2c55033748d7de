//! Serde adapters that write rationals as `"p/q"` strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::exact::{format_rational, parse_rational, Rational};

pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let raw = String::deserialize(d)?;
    parse_rational(&raw).map_err(D::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

pub mod pair {
    use super::*;

    pub fn serialize<S: Serializer>(v: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
        super::vec::serialize(&[v.0.clone(), v.1.clone()], s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(Rational, Rational), D::Error> {
        let v = super::vec::deserialize(d)?;
        match <[Rational; 2]>::try_from(v) {
            Ok([lo, hi]) => Ok((lo, hi)),
            Err(v) => Err(D::Error::custom(format!("expected [lo, hi], got {} entries", v.len()))),
        }
    }
}
