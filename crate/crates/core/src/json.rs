//! JSON helpers for exact numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

/// Integers as decimal strings, lowest degree first.
pub fn bigints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// `{"num": "...", "den": "..."}`.
pub fn rational(r: &BigRational) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

/// Parses an array of integers given as strings or JSON numbers.
pub fn parse_bigints(v: &Value) -> Option<Vec<BigInt>> {
    v.as_array()?
        .iter()
        .map(|x| match x {
            Value::String(s) => s.trim().parse().ok(),
            Value::Number(n) => n.as_i64().map(BigInt::from),
            _ => None,
        })
        .collect()
}
