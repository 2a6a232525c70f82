//! JSON plumbing shared by the CLI and the FFI layer.

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Syntax errors are `Malformed`; well-formed JSON describing an invalid value
/// (a crossing partition, a non-arc, a zero canonical map) is `InvalidValue`.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Error::InvalidValue(e.to_string()),
        _ => Error::Malformed(e.to_string()),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("values serialize infallibly")
}

/// Exact rationals as `"p/q"` strings (`"p"` is accepted on input).
pub mod rational {
    use num_rational::Rational64;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| de::Error::custom(format!("not a rational: {text:?}")))
    }

    pub fn parse(text: &str) -> Option<Rational64> {
        let (p, q) = match text.split_once('/') {
            Some((p, q)) => (p.trim().parse().ok()?, q.trim().parse().ok()?),
            None => (text.trim().parse().ok()?, 1),
        };
        (q != 0).then(|| Rational64::new(p, q))
    }

}
