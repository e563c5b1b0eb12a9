//! JSON interchange for diagrams.
//!
//! Schema:
//!
//! ```json
//! {
//!   "crossings": 2,
//!   "arcs": [[["x", 0, 1], ["b", 0, "NW"]], ...],
//!   "free_loops": 0,
//!   "boundaries": 1
//! }
//! ```
//!
//! An attachment is `["x", crossing, port]` or `["b", boundary, label]`
//! with labels `NW | NE | SE | SW`. Loading validates the perfect
//! matching but not planarity; downstream consumers treat loaded
//! diagrams as "planarity unverified".

use std::fmt;

use serde_json::{json, Value};
use tanglekit_core::diagram::{Attachment, Diagram, DiagramError, Label};

#[derive(Debug)]
pub enum JsonError {
    Syntax(serde_json::Error),
    Schema(String),
    Diagram(DiagramError),
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JsonError::Syntax(e) => write!(f, "invalid JSON: {}", e),
            JsonError::Schema(m) => write!(f, "schema violation: {}", m),
            JsonError::Diagram(e) => write!(f, "invalid diagram: {}", e),
        }
    }
}

impl std::error::Error for JsonError {}

fn attachment_to_json(a: Attachment) -> Value {
    match a {
        Attachment::Port { crossing, port } => json!(["x", crossing, port]),
        Attachment::End { boundary, label } => json!(["b", boundary, label.as_str()]),
    }
}

pub fn diagram_to_json(d: &Diagram) -> Value {
    json!({
        "crossings": d.crossings(),
        "arcs": d
            .arcs()
            .iter()
            .map(|&(a, b)| json!([attachment_to_json(a), attachment_to_json(b)]))
            .collect::<Vec<Value>>(),
        "free_loops": d.free_loops(),
        "boundaries": d.boundaries(),
    })
}

pub fn diagram_to_string(d: &Diagram) -> String {
    diagram_to_json(d).to_string()
}

fn schema(m: impl Into<String>) -> JsonError {
    JsonError::Schema(m.into())
}

fn attachment_from_json(v: &Value) -> Result<Attachment, JsonError> {
    let arr = v.as_array().ok_or_else(|| schema("attachment must be an array"))?;
    if arr.len() != 3 {
        return Err(schema("attachment must have three elements"));
    }
    let kind = arr[0].as_str().ok_or_else(|| schema("attachment tag must be a string"))?;
    let idx = arr[1]
        .as_u64()
        .ok_or_else(|| schema("attachment index must be a nonnegative integer"))?;
    let idx = u32::try_from(idx).map_err(|_| schema("attachment index too large"))?;
    match kind {
        "x" => {
            let port = arr[2].as_u64().ok_or_else(|| schema("port must be 0..=3"))?;
            if port > 3 {
                return Err(schema("port must be 0..=3"));
            }
            Ok(Attachment::port(idx, port as u8))
        }
        "b" => {
            let label = arr[2].as_str().ok_or_else(|| schema("label must be a string"))?;
            let label = Label::from_str(label)
                .ok_or_else(|| schema("label must be NW, NE, SE or SW"))?;
            Ok(Attachment::end(idx, label))
        }
        other => Err(schema(format!("unknown attachment tag '{}'", other))),
    }
}

pub fn diagram_from_value(v: &Value) -> Result<Diagram, JsonError> {
    let obj = v.as_object().ok_or_else(|| schema("top level must be an object"))?;
    let get_u32 = |key: &str| -> Result<u32, JsonError> {
        let v = obj.get(key).ok_or_else(|| schema(format!("missing field '{}'", key)))?;
        let n = v.as_u64().ok_or_else(|| schema(format!("'{}' must be a nonnegative integer", key)))?;
        u32::try_from(n).map_err(|_| schema(format!("'{}' too large", key)))
    };
    let crossings = get_u32("crossings")?;
    let free_loops = get_u32("free_loops")?;
    let boundaries = get_u32("boundaries")?;
    let arcs_v = obj
        .get("arcs")
        .and_then(|a| a.as_array())
        .ok_or_else(|| schema("'arcs' must be an array"))?;
    let mut arcs = Vec::with_capacity(arcs_v.len());
    for arc in arcs_v {
        let pair = arc.as_array().ok_or_else(|| schema("each arc must be a pair"))?;
        if pair.len() != 2 {
            return Err(schema("each arc must have two attachments"));
        }
        arcs.push((attachment_from_json(&pair[0])?, attachment_from_json(&pair[1])?));
    }
    Diagram::new(crossings, boundaries, free_loops, arcs).map_err(JsonError::Diagram)
}

pub fn diagram_from_str(s: &str) -> Result<Diagram, JsonError> {
    let v: Value = serde_json::from_str(s).map_err(JsonError::Syntax)?;
    diagram_from_value(&v)
}
