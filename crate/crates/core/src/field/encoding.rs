//! JSON text form of scalars: base-field values are decimal strings (`"a/b"`
//! for non-integral rationals); extension values are `{"a", "b", "d"}` objects
//! whose entries are base-field strings.

use serde_json::{json, Value};

use super::{FieldDescriptor, FieldError, FieldKind, Result, Scalar};

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s.field().kind() {
        FieldKind::QuadraticExtension { d, .. } => {
            let (a, b) = s.components();
            json!({ "a": a.to_string(), "b": b.to_string(), "d": d.to_string() })
        }
        _ => Value::String(s.to_string()),
    }
}

/// Parses a scalar over `base` (`Q` or `F_p`). Extension objects produce
/// scalars in the canonical extension of `base`.
pub fn scalar_from_json(value: &Value, base: &FieldDescriptor) -> Result<Scalar> {
    let base = base.base();
    match value {
        Value::String(s) => base.parse_base(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => base.parse_base(&n.to_string()),
        Value::Object(map) => {
            let part = |key: &str| -> Result<Scalar> {
                let v = map
                    .get(key)
                    .ok_or_else(|| FieldError::Parse(value.to_string(), format!("missing \"{key}\"")))?;
                match v {
                    Value::Object(_) => Err(FieldError::Parse(v.to_string(), "nested extension".into())),
                    _ => scalar_from_json(v, base),
                }
            };
            if let Some(extra) = map.keys().find(|k| !matches!(k.as_str(), "a" | "b" | "d")) {
                return Err(FieldError::Parse(value.to_string(), format!("unexpected key \"{extra}\"")));
            }
            Scalar::adjoin(&part("a")?, &part("b")?, &part("d")?)
        }
        other => Err(FieldError::Parse(other.to_string(), "expected a string or {a, b, d}".into())),
    }
}
