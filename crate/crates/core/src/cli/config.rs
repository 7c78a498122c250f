//! JSON configuration files.
//!
//! ```json
//! {"field": {"kind": "prime", "p": "101"},
//!  "plane_config": {"points": [["1","0","0"], ...]},
//!  "p1_config": {"points": [["1","3"], ...], "weights": [2, 2, 2]}}
//! ```

use serde_json::{json, Map, Value};

use crate::dm::{P1Config, WeightVector};
use crate::field::{scalar_from_json, scalar_to_json, FieldDescriptor, FieldKind, Scalar};
use crate::geom::{Point1, Point2};
use crate::phi::PlaneConfig;

use super::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigFile {
    pub field: FieldDescriptor,
    pub plane_config: Option<PlaneConfig>,
    pub p1_config: Option<P1Config>,
}

fn perr(context: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Parse { context: context.into(), message: message.into() }
}

/// `rational` or `prime:<p>`.
pub fn parse_field_arg(text: &str) -> Result<FieldDescriptor, CliError> {
    match text.trim() {
        "rational" | "Q" => Ok(FieldDescriptor::rationals()),
        other => {
            let p = other.strip_prefix("prime:").ok_or_else(|| perr("--field", format!("expected rational or prime:<p>, got {other:?}")))?;
            FieldDescriptor::prime_from_str(p).map_err(|e| perr("--field", e.to_string()))
        }
    }
}

pub fn field_to_json(field: &FieldDescriptor) -> Value {
    match field.base().kind() {
        FieldKind::PrimeField(p) => json!({ "kind": "prime", "p": p.to_string() }),
        _ => json!({ "kind": "rational" }),
    }
}

fn field_from_json(v: &Value) -> Result<FieldDescriptor, CliError> {
    let obj = v.as_object().ok_or_else(|| perr("field", "expected an object"))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(FieldDescriptor::rationals()),
        Some("prime") => {
            let p = match obj.get("p") {
                Some(Value::String(s)) => s.clone(),
                Some(Value::Number(n)) => n.to_string(),
                _ => return Err(perr("field.p", "missing prime")),
            };
            FieldDescriptor::prime_from_str(&p).map_err(|e| perr("field.p", e.to_string()))
        }
        other => Err(perr("field.kind", format!("expected \"rational\" or \"prime\", got {other:?}"))),
    }
}

fn coords_from_json<const N: usize>(v: &Value, field: &FieldDescriptor, ctx: &str) -> Result<[Scalar; N], CliError> {
    let arr = v.as_array().ok_or_else(|| perr(ctx, "expected an array"))?;
    if arr.len() != N {
        return Err(perr(ctx, format!("expected {N} coordinates, got {}", arr.len())));
    }
    let mut out = Vec::with_capacity(N);
    for (k, c) in arr.iter().enumerate() {
        out.push(scalar_from_json(c, field).map_err(|e| perr(format!("{ctx}[{k}]"), e.to_string()))?);
    }
    Ok(out.try_into().expect("length checked"))
}

fn points_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>, CliError> {
    v.get("points").and_then(Value::as_array).ok_or_else(|| perr(format!("{ctx}.points"), "expected an array"))
}

pub fn plane_points_to_json(points: &[Point2]) -> Value {
    Value::Array(points.iter().map(|p| Value::Array(p.coords().iter().map(scalar_to_json).collect())).collect())
}

pub fn line_points_to_json(points: &[Point1]) -> Value {
    Value::Array(points.iter().map(|p| Value::Array(p.coords().iter().map(scalar_to_json).collect())).collect())
}

pub fn parse_config(text: &str) -> Result<ConfigFile, CliError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| perr(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| perr("$", "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "field" | "plane_config" | "p1_config")) {
        return Err(perr(k.clone(), "unknown key"));
    }
    let field = field_from_json(obj.get("field").ok_or_else(|| perr("field", "missing"))?)?;

    let plane_config = match obj.get("plane_config") {
        None => None,
        Some(pc) => {
            let arr = points_array(pc, "plane_config")?;
            if arr.len() != 6 {
                return Err(perr("plane_config.points", format!("expected 6 points, got {}", arr.len())));
            }
            let mut pts = Vec::with_capacity(6);
            for (i, p) in arr.iter().enumerate() {
                let ctx = format!("plane_config.points[{i}]");
                let c = coords_from_json::<3>(p, &field, &ctx)?;
                pts.push(Point2::new(c).map_err(|e| perr(ctx, e.to_string()))?);
            }
            let cfg = PlaneConfig::new(pts.try_into().expect("six points"))
                .map_err(|e| perr("plane_config.points", e.to_string()))?;
            Some(cfg)
        }
    };

    let p1_config = match obj.get("p1_config") {
        None => None,
        Some(pc) => {
            let arr = points_array(pc, "p1_config")?;
            let mut pts = Vec::with_capacity(arr.len());
            for (i, p) in arr.iter().enumerate() {
                let ctx = format!("p1_config.points[{i}]");
                let c = coords_from_json::<2>(p, &field, &ctx)?;
                pts.push(Point1::new(c).map_err(|e| perr(ctx, e.to_string()))?);
            }
            let w = pc
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| perr("p1_config.weights", "expected an array"))?
                .iter()
                .map(|x| x.as_u64().and_then(|n| u32::try_from(n).ok()))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| perr("p1_config.weights", "expected positive integers"))?;
            let w = WeightVector::new(w).map_err(|e| perr("p1_config.weights", e.to_string()))?;
            Some(P1Config::new(pts, w).map_err(|e| perr("p1_config", e.to_string()))?)
        }
    };

    Ok(ConfigFile { field, plane_config, p1_config })
}

pub fn config_to_json(cfg: &ConfigFile) -> Value {
    let mut obj = Map::new();
    obj.insert("field".into(), field_to_json(&cfg.field));
    if let Some(pc) = &cfg.plane_config {
        obj.insert("plane_config".into(), json!({ "points": plane_points_to_json(pc.points()) }));
    }
    if let Some(p1) = &cfg.p1_config {
        obj.insert(
            "p1_config".into(),
            json!({ "points": line_points_to_json(p1.points()), "weights": p1.weights().weights() }),
        );
    }
    Value::Object(obj)
}

/// Pretty JSON with a trailing newline.
pub fn serialize_config(cfg: &ConfigFile) -> String {
    let mut s = serde_json::to_string_pretty(&config_to_json(cfg)).expect("JSON values serialize");
    s.push('\n');
    s
}

impl ConfigFile {
    pub fn plane(cfg: &PlaneConfig) -> Self {
        ConfigFile { field: cfg.field().base().clone(), plane_config: Some(cfg.clone()), p1_config: None }
    }

    pub fn line(cfg: &P1Config) -> Self {
        let field = cfg.points()[0].field().base().clone();
        ConfigFile { field, plane_config: None, p1_config: Some(cfg.clone()) }
    }
}
