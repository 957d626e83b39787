//! Structured-text documents and exact rational (de)serialization.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedra::Rational;

/// `{"n": 4, "sets": [[], [1, 2], ...]}` with 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub n: usize,
    pub sets: Vec<Vec<i64>>,
}

/// `{"n": 4, "relations": [[3, 4]]}`; each pair `[i, j]` means `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub n: usize,
    pub relations: Vec<[i64; 2]>,
}

/// `{"kind": "custom", "sets": [[2, 4], [2, 3, 4]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionDocument {
    #[serde(default = "custom_kind")]
    pub kind: String,
    pub sets: Vec<Vec<i64>>,
}

fn custom_kind() -> String {
    "custom".to_owned()
}

/// `{"system": {...}, "values": {"1,2,4": "3/2", ...}}`.
///
/// Values are integers or `"p/q"` strings; the empty coalition may be omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub system: SystemDocument,
    pub values: BTreeMap<String, serde_json::Value>,
}

/// Parses `"p/q"` or an integer. Decimal and exponent forms are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let invalid = || Error::InvalidRational(text.to_owned());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let ok = |s: &str| {
        let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) {
        return Err(invalid());
    }
    let p: BigInt = num.parse().map_err(|_| invalid())?;
    let q: BigInt = den.parse().map_err(|_| invalid())?;
    if q.is_zero() {
        return Err(invalid());
    }
    Ok(Rational::new(p, q))
}

/// Parses a JSON game value: an integer number or a rational string.
pub fn parse_rational_value(value: &serde_json::Value) -> Result<Rational> {
    match value {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::InvalidRational(other.to_string())),
    }
}

/// Integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses a comma-joined label key such as `"1,2,4"`; `""` is the empty coalition.
pub fn parse_key(key: &str) -> Result<Vec<i64>> {
    let key = key.trim();
    if key.is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::Document(format!("bad coalition key {key:?}")))
        })
        .collect()
}

pub fn format_key(labels: &[usize]) -> String {
    labels
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
