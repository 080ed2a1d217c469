//! JSON instance and result formats shared by the CLI and the C API.
//!
//! Complex numbers are always two-element `[re, im]` arrays. Result files
//! are rendered with a fixed field order and floats at 17 significant
//! digits, so identical inputs produce byte-identical output.

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{HomqError, Result};
use crate::graph::{Graph, VertexSubset};
use crate::hom::{Diagnostics, RestrictedHomInstance, SymmetricMatrixAssignment};
use crate::iqp::GraphXProgram;
use crate::ising::IsingInstance;
use crate::regimes::RegimeReport;

#[derive(Deserialize)]
struct WireInstance {
    vertices: usize,
    #[serde(default)]
    edges: Vec<WireEdge>,
    #[serde(default)]
    fields: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    angles: Option<Vec<f64>>,
    #[serde(default)]
    pinned: Option<Vec<usize>>,
    #[serde(default)]
    pin_index: Option<usize>,
    #[serde(default)]
    m: Option<usize>,
}

#[derive(Deserialize)]
struct WireEdge {
    u: usize,
    v: usize,
    #[serde(default)]
    weight: Option<[f64; 2]>,
    #[serde(default)]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    angle: Option<f64>,
}

/// Instance flavour carried by a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Hom,
    Ising,
    Iqp,
}

fn wire(text: &str) -> Result<WireInstance> {
    serde_json::from_str(text).map_err(|e| HomqError::Parse(e.to_string()))
}

fn cx(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn edge_pairs(w: &WireInstance) -> Vec<(usize, usize)> {
    w.edges.iter().map(|e| (e.u, e.v)).collect()
}

pub fn parse_hom(text: &str) -> Result<RestrictedHomInstance> {
    let w = wire(text)?;
    let m = w
        .m
        .ok_or_else(|| HomqError::Parse("hom instance requires \"m\"".into()))?;
    if m == 0 {
        return Err(HomqError::Parse("\"m\" must be positive".into()));
    }
    let graph = Graph::new(w.vertices, &edge_pairs(&w))?;
    let mut mats = Vec::with_capacity(w.edges.len());
    for (i, e) in w.edges.iter().enumerate() {
        let rows = e
            .matrix
            .as_ref()
            .ok_or_else(|| HomqError::Parse(format!("edge {i} requires \"matrix\"")))?;
        if rows.len() != m || rows.iter().any(|r| r.len() != m) {
            return Err(HomqError::Parse(format!(
                "edge {i}: matrix must be {m}x{m}"
            )));
        }
        mats.push(rows.iter().flatten().map(|&p| cx(p)).collect());
    }
    let matrices = SymmetricMatrixAssignment::new(m, mats)?;
    let pinned = VertexSubset::new(w.pinned.unwrap_or_default());
    let pin_index = w.pin_index.unwrap_or(1);
    RestrictedHomInstance::new(graph, matrices, pinned, pin_index)
}

pub fn parse_ising(text: &str) -> Result<IsingInstance> {
    let w = wire(text)?;
    let graph = Graph::new(w.vertices, &edge_pairs(&w))?;
    let mut weights = Vec::with_capacity(w.edges.len());
    for (i, e) in w.edges.iter().enumerate() {
        let pair = e
            .weight
            .ok_or_else(|| HomqError::Parse(format!("edge {i} requires \"weight\": [re, im]")))?;
        weights.push(cx(pair));
    }
    let fields = match w.fields {
        Some(f) => f.into_iter().map(cx).collect(),
        None => vec![Complex64::new(0.0, 0.0); w.vertices],
    };
    IsingInstance::new(graph, weights, fields)
}

pub fn parse_iqp(text: &str) -> Result<GraphXProgram> {
    let w = wire(text)?;
    let graph = Graph::new(w.vertices, &edge_pairs(&w))?;
    let mut angles = Vec::with_capacity(w.edges.len());
    for (i, e) in w.edges.iter().enumerate() {
        if e.weight.is_some() {
            return Err(HomqError::Parse(format!(
                "edge {i}: iqp edges take a plain real \"angle\", not \"weight\""
            )));
        }
        let a = e
            .angle
            .ok_or_else(|| HomqError::Parse(format!("edge {i} requires \"angle\"")))?;
        angles.push(a);
    }
    let vertex_angles = w.angles.unwrap_or_else(|| vec![0.0; w.vertices]);
    GraphXProgram::new(graph, angles, vertex_angles)
}

/// Guesses the instance flavour from the fields present.
pub fn infer_kind(text: &str) -> Result<InstanceKind> {
    let w = wire(text)?;
    if w.m.is_some() || w.edges.iter().any(|e| e.matrix.is_some()) {
        return Ok(InstanceKind::Hom);
    }
    if w.angles.is_some() || w.edges.iter().any(|e| e.angle.is_some()) {
        return Ok(InstanceKind::Iqp);
    }
    Ok(InstanceKind::Ising)
}

/// 17 significant digits; bit-faithful on round-trip.
fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

fn fmt_complex(z: Complex64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

/// Result document rendered with a fixed field order.
#[derive(Clone, Debug)]
pub struct ResultDoc {
    pub value: Complex64,
    pub method: &'static str,
    pub epsilon: Option<f64>,
    pub order: Option<usize>,
    pub regime: Option<RegimeReport>,
    pub guarantee: Option<bool>,
    pub diagnostics: Option<Diagnostics>,
}

impl ResultDoc {
    pub fn exact(value: Complex64) -> Self {
        ResultDoc {
            value,
            method: "exact",
            epsilon: None,
            order: None,
            regime: None,
            guarantee: None,
            diagnostics: None,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"value\": {},\n", fmt_complex(self.value)));
        out.push_str(&format!("  \"method\": \"{}\"", self.method));
        if let Some(eps) = self.epsilon {
            out.push_str(&format!(",\n  \"epsilon\": {}", fmt_f64(eps)));
        }
        if let Some(order) = self.order {
            out.push_str(&format!(",\n  \"order\": {order}"));
        }
        if let Some(r) = &self.regime {
            out.push_str(&format!(
                ",\n  \"regime\": {{\"margin\": {}, \"threshold\": {}, \"inside\": {}}}",
                fmt_f64(r.margin),
                fmt_f64(r.threshold),
                r.inside
            ));
        }
        if let Some(g) = self.guarantee {
            out.push_str(&format!(",\n  \"guarantee\": {g}"));
        }
        if let Some(d) = &self.diagnostics {
            out.push_str(&format!(
                ",\n  \"diagnostics\": {{\"subset_count\": {}, \"max_subset_size\": {}}}",
                d.subset_count, d.max_subset_size
            ));
        }
        out.push_str("\n}\n");
        out
    }
}

/// Machine-parseable error body.
pub fn render_error(kind: &str, message: &str) -> String {
    serde_json::to_string_pretty(&serde_json::json!({
        "error": { "kind": kind, "message": message }
    }))
    .expect("error body serializes")
        + "\n"
}
