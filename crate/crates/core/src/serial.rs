//! JSON helpers shared by the report types.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactlin::field::Field;

pub fn vec_to_json<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|a| f.elem_to_json(a)).collect())
}

pub fn vec_from_json<F: Field>(f: &F, v: &Value) -> Result<Vec<F::Elem>> {
    v.as_array()
        .ok_or_else(|| Error::Input(format!("expected an array of field elements, got {v}")))?
        .iter()
        .map(|a| f.elem_from_json(a))
        .collect()
}

/// Reads an integer field, accepting JSON numbers only.
pub fn get_i64(v: &Value, key: &str) -> Result<Option<i64>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x.as_i64().map(Some).ok_or_else(|| Error::Input(format!("\"{key}\" must be an integer"))),
    }
}
