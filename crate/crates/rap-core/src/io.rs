//! File formats: `rap-polyhedron/1` documents and `rap-trace/1` reduction
//! certificates.
//!
//! Polyhedron files are JSON of the form
//! `{ "format": "rap-polyhedron/1", "name": ..., "faces": [[int, ...], ...] }`
//! with faces as cyclic 0-based vertex lists, counterclockwise from outside.
//! Writers emit faces in face-id order, every cycle rotated to start at its
//! smallest vertex, so re-emitting a parsed file is byte-stable.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{RapError, Result};
use crate::polyhedron::Polyhedron;
use crate::reduction::{MoveRecord, NodeRecord, Policy, ReductionTrace, Step};
use crate::volumes::Volume;

pub const POLYHEDRON_FORMAT: &str = "rap-polyhedron/1";
pub const TRACE_FORMAT: &str = "rap-trace/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PolyhedronDoc {
    format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    faces: Vec<Vec<u64>>,
}

/// Parses a `rap-polyhedron/1` JSON document.
pub fn polyhedron_from_json(text: &str) -> Result<(Polyhedron, Option<String>)> {
    let doc: PolyhedronDoc = serde_json::from_str(text)
        .map_err(|e| RapError::Internal(format!("invalid polyhedron JSON: {e}")))?;
    if doc.format != POLYHEDRON_FORMAT {
        return Err(RapError::Internal(format!(
            "unsupported format {:?}, expected {POLYHEDRON_FORMAT:?}",
            doc.format
        )));
    }
    Ok((Polyhedron::from_faces(&doc.faces)?, doc.name))
}

/// Serializes a polyhedron as a `rap-polyhedron/1` document.
pub fn polyhedron_to_json(p: &Polyhedron, name: Option<&str>) -> String {
    let doc = PolyhedronDoc {
        format: POLYHEDRON_FORMAT.into(),
        name: name.map(|s| s.to_string()),
        faces: p
            .faces()
            .iter()
            .map(|f| f.iter().map(|&v| v as u64).collect())
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
    out.push('\n');
    out
}

/// Serializes a reduction trace as a `rap-trace/1` document.
pub fn trace_to_json(trace: &ReductionTrace) -> String {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            let mut obj = serde_json::Map::new();
            obj.insert("input".into(), s.input.into());
            match &s.mv {
                MoveRecord::Surgery { edge } => {
                    obj.insert("move".into(), "surgery".into());
                    obj.insert("edge".into(), serde_json::json!([edge.0, edge.1]));
                }
                MoveRecord::Decompose {
                    circuit,
                    circuit_faces,
                } => {
                    obj.insert("move".into(), "decompose".into());
                    obj.insert(
                        "circuit".into(),
                        Value::Array(
                            circuit
                                .iter()
                                .map(|&(u, v)| serde_json::json!([u, v]))
                                .collect(),
                        ),
                    );
                    obj.insert(
                        "circuit_faces".into(),
                        Value::Array(circuit_faces.iter().map(|&f| f.into()).collect()),
                    );
                }
            }
            obj.insert(
                "children".into(),
                Value::Array(s.children.iter().map(|&c| c.into()).collect()),
            );
            Value::Object(obj)
        })
        .collect();
    let nodes: Vec<Value> = trace
        .nodes
        .iter()
        .map(|n| {
            serde_json::json!({
                "hash": n.hash,
                "faces": n.faces,
                "lobell": n.lobell,
            })
        })
        .collect();
    let doc = serde_json::json!({
        "format": TRACE_FORMAT,
        "policy": trace.policy.name(),
        "nodes": nodes,
        "steps": steps,
        "terminal": trace.terminal,
        "bound": trace.bound.value,
        "bound_error": trace.bound.error_bound,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
    out.push('\n');
    out
}

/// Parses a `rap-trace/1` document.
pub fn trace_from_json(text: &str) -> Result<ReductionTrace> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| RapError::IncompleteTrace(format!("invalid trace JSON: {e}")))?;
    let fail = |m: &str| RapError::IncompleteTrace(m.to_string());
    if doc.get("format").and_then(Value::as_str) != Some(TRACE_FORMAT) {
        return Err(fail("missing or unsupported format"));
    }
    let policy = doc
        .get("policy")
        .and_then(Value::as_str)
        .and_then(Policy::parse)
        .ok_or_else(|| fail("missing policy"))?;
    let nodes: Vec<NodeRecord> = doc
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| fail("missing nodes"))?
        .iter()
        .map(|n| {
            Ok(NodeRecord {
                hash: n
                    .get("hash")
                    .and_then(Value::as_str)
                    .ok_or_else(|| fail("node without hash"))?
                    .to_string(),
                faces: n
                    .get("faces")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| fail("node without face count"))? as usize,
                lobell: n.get("lobell").and_then(Value::as_u64),
            })
        })
        .collect::<Result<_>>()?;
    let pair = |v: &Value| -> Result<(usize, usize)> {
        let arr = v.as_array().ok_or_else(|| fail("malformed vertex pair"))?;
        if arr.len() != 2 {
            return Err(fail("malformed vertex pair"));
        }
        Ok((
            arr[0].as_u64().ok_or_else(|| fail("bad vertex"))? as usize,
            arr[1].as_u64().ok_or_else(|| fail("bad vertex"))? as usize,
        ))
    };
    let steps: Vec<Step> = doc
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| fail("missing steps"))?
        .iter()
        .map(|s| {
            let input = s
                .get("input")
                .and_then(Value::as_u64)
                .ok_or_else(|| fail("step without input"))? as usize;
            let children: Vec<usize> = s
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| fail("step without children"))?
                .iter()
                .map(|c| c.as_u64().map(|x| x as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| fail("bad child index"))?;
            let mv = match s.get("move").and_then(Value::as_str) {
                Some("surgery") => MoveRecord::Surgery {
                    edge: pair(s.get("edge").ok_or_else(|| fail("surgery without edge"))?)?,
                },
                Some("decompose") => MoveRecord::Decompose {
                    circuit: s
                        .get("circuit")
                        .and_then(Value::as_array)
                        .ok_or_else(|| fail("decompose without circuit"))?
                        .iter()
                        .map(pair)
                        .collect::<Result<_>>()?,
                    circuit_faces: s
                        .get("circuit_faces")
                        .and_then(Value::as_array)
                        .map(|a| {
                            a.iter()
                                .map(|f| f.as_u64().map(|x| x as usize))
                                .collect::<Option<Vec<_>>>()
                        })
                        .unwrap_or(Some(Vec::new()))
                        .ok_or_else(|| fail("bad circuit faces"))?,
                },
                _ => return Err(fail("unknown move")),
            };
            Ok(Step {
                input,
                mv,
                children,
            })
        })
        .collect::<Result<_>>()?;
    let terminal: Vec<u64> = doc
        .get("terminal")
        .and_then(Value::as_array)
        .ok_or_else(|| fail("missing terminal"))?
        .iter()
        .map(Value::as_u64)
        .collect::<Option<_>>()
        .ok_or_else(|| fail("bad terminal entry"))?;
    let bound = Volume {
        value: doc
            .get("bound")
            .and_then(Value::as_f64)
            .ok_or_else(|| fail("missing bound"))?,
        error_bound: doc
            .get("bound_error")
            .and_then(Value::as_f64)
            .ok_or_else(|| fail("missing bound_error"))?,
    };
    Ok(ReductionTrace {
        policy,
        nodes,
        steps,
        terminal,
        bound,
    })
}
