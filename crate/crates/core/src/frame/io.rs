//! JSON frame files:
//!
//! ```json
//! {"ambient_dim": 2, "field": "complex", "vectors": [[[1, 0], [0, 1]], [[0.5, 0], [0, 0]]]}
//! ```
//!
//! Each row of `vectors` is one frame vector. Real files hold plain numbers;
//! complex files hold `[re, im]` pairs (plain numbers are accepted as real).

use num_complex::Complex64;
use serde_json::{json, Value};

use super::Frame;
use crate::error::{FrameError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Real,
    Complex,
}

fn parse_err(msg: impl Into<String>) -> FrameError {
    FrameError::Parse(msg.into())
}

fn parse_entry(v: &Value, field: FieldKind, row: usize, col: usize) -> Result<Complex64> {
    let num = |x: &Value| -> Result<f64> {
        x.as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| parse_err(format!("row {row}, entry {col}: expected a finite number")))
    };
    match (v, field) {
        (Value::Number(_), _) => Ok(Complex64::new(num(v)?, 0.0)),
        (Value::Array(pair), FieldKind::Complex) if pair.len() == 2 => {
            Ok(Complex64::new(num(&pair[0])?, num(&pair[1])?))
        }
        (Value::Array(_), FieldKind::Complex) => Err(parse_err(format!(
            "row {row}, entry {col}: complex entries are [re, im] pairs"
        ))),
        _ => Err(parse_err(format!(
            "row {row}, entry {col}: expected a number for field \"real\""
        ))),
    }
}

/// Parses a frame from an already-decoded JSON value.
pub fn frame_from_value(value: &Value, label: &str) -> Result<Frame> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("top level must be a JSON object"))?;
    let ambient_dim = obj
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing or invalid \"ambient_dim\""))? as usize;
    if ambient_dim == 0 {
        return Err(parse_err("\"ambient_dim\" must be at least 1"));
    }
    let field = match obj.get("field").and_then(Value::as_str) {
        Some("real") | None => FieldKind::Real,
        Some("complex") => FieldKind::Complex,
        Some(other) => return Err(parse_err(format!("unknown field \"{other}\""))),
    };
    let rows = obj
        .get("vectors")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing or invalid \"vectors\""))?;
    if rows.is_empty() {
        return Err(parse_err("\"vectors\" is empty"));
    }
    let mut vectors = Vec::with_capacity(rows.len());
    for (row, r) in rows.iter().enumerate() {
        let entries = r
            .as_array()
            .ok_or_else(|| parse_err(format!("row {row} is not an array")))?;
        if entries.len() != ambient_dim {
            return Err(parse_err(format!(
                "row {row} has {} entries, expected ambient_dim = {ambient_dim}",
                entries.len()
            )));
        }
        let v = entries
            .iter()
            .enumerate()
            .map(|(col, e)| parse_entry(e, field, row, col))
            .collect::<Result<Vec<_>>>()?;
        vectors.push(v);
    }
    let label = obj.get("label").and_then(Value::as_str).unwrap_or(label);
    Frame::new(ambient_dim, &vectors, label)
}

pub fn frame_from_json(text: &str, label: &str) -> Result<Frame> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    frame_from_value(&value, label)
}

/// Encodes a frame; the field is `"real"` when every imaginary part is zero.
pub fn frame_to_value(frame: &Frame) -> Value {
    let is_real = frame.synthesis().iter().all(|z| z.im == 0.0);
    let vectors: Vec<Value> = (0..frame.len())
        .map(|j| {
            let col = frame.synthesis().column(j);
            if is_real {
                json!(col.iter().map(|z| z.re).collect::<Vec<_>>())
            } else {
                json!(col.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
            }
        })
        .collect();
    json!({
        "ambient_dim": frame.ambient_dim(),
        "field": if is_real { "real" } else { "complex" },
        "label": frame.label(),
        "vectors": vectors,
    })
}
