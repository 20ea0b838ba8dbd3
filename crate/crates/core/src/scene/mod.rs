//! Scenes: the drawable output of every construction, with exporters and the
//! interactive session model.

mod export;
pub mod session;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Graph, NodeKind, Polytope};

pub use export::{export, Camera, Format, SVG_MARGIN, SVG_SIZE};
pub use session::{Command, Response, Session, SessionConfig, Source};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Primal,
    Dual,
    Artificial,
    #[default]
    Generic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneNode {
    pub id: usize,
    pub position: Vec<f64>,
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub kind: NodeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneEdge {
    pub source: usize,
    pub target: usize,
    #[serde(default)]
    pub kind: EdgeKind,
    /// Integer class behind the colour, e.g. a face dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color_class: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    /// Operation that produced the scene, e.g. `"schlegel"`.
    pub operation: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Figure or example this scene reproduces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
}

impl Metadata {
    pub fn new(operation: impl Into<String>) -> Self {
        Metadata { operation: operation.into(), ..Default::default() }
    }

    pub fn with_param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("parameter serializes"));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_example(mut self, example: impl Into<String>) -> Self {
        self.example = Some(example.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub nodes: Vec<SceneNode>,
    pub edges: Vec<SceneEdge>,
    /// Polygons as node cycles, counter-clockwise seen from outside.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<Vec<usize>>,
    pub metadata: Metadata,
}

impl Scene {
    pub fn new(metadata: Metadata) -> Self {
        Scene { metadata, ..Default::default() }
    }

    /// Nodes and edges of `g` at `positions`, carrying labels and kinds.
    pub fn from_graph(g: &Graph, positions: &[Vec<f64>], metadata: Metadata) -> Result<Self> {
        if positions.len() != g.node_count() {
            return Err(Error::DimensionMismatch { expected: g.node_count(), found: positions.len() });
        }
        let nodes = g
            .nodes()
            .iter()
            .zip(positions)
            .enumerate()
            .map(|(id, (n, p))| SceneNode { id, position: p.clone(), label: n.label.clone(), kind: n.kind, color: None })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| SceneEdge { source: e.a, target: e.b, kind: EdgeKind::Generic, color_class: None, color: None })
            .collect();
        let s = Scene { nodes, edges, faces: Vec::new(), metadata };
        s.validate()?;
        Ok(s)
    }

    /// Graph and 2-faces of a 3-polytope at its own vertex coordinates.
    pub fn from_polytope(p: &Polytope, metadata: Metadata) -> Result<Self> {
        if p.ambient_dim() > 3 {
            return Err(Error::InvalidParameter(format!(
                "a {}-dimensional polytope has no direct drawing; use a Schlegel diagram or a spring embedding",
                p.ambient_dim()
            )));
        }
        let mut s = Scene::from_graph(&p.graph(), &p.vertices_f64(), metadata)?;
        if p.dim() == 3 && p.ambient_dim() == 3 {
            s.faces = oriented_facets(p);
        }
        Ok(s)
    }

    /// Common dimension of all positions, if there are nodes.
    pub fn dim(&self) -> Option<usize> {
        self.nodes.first().map(|n| n.position.len())
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id != i {
                return Err(Error::Malformed(format!("node {i} has id {}", n.id)));
            }
            if !matches!(n.position.len(), 2 | 3) {
                return Err(Error::InvalidParameter(format!(
                    "node {i} has {} coordinates; scenes are 2- or 3-dimensional",
                    n.position.len()
                )));
            }
            if Some(n.position.len()) != dim {
                return Err(Error::DimensionMismatch { expected: dim.unwrap_or(2), found: n.position.len() });
            }
            if n.position.iter().any(|x| !x.is_finite()) {
                return Err(Error::Malformed(format!("node {i} has a non-finite coordinate")));
            }
        }
        let n = self.nodes.len();
        for e in &self.edges {
            for v in [e.source, e.target] {
                if v >= n {
                    return Err(Error::UnknownNode(v));
                }
            }
        }
        for f in &self.faces {
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownNode(v));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scene serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scene = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    /// Copy without the edges of `kind`.
    pub fn without_edge_kind(&self, kind: EdgeKind) -> Scene {
        Scene { edges: self.edges.iter().filter(|e| e.kind != kind).cloned().collect(), ..self.clone() }
    }

    /// Colours every edge with a class from `dimension_color`.
    pub fn color_edges_by_class(&mut self) {
        let max = self.edges.iter().filter_map(|e| e.color_class).max().unwrap_or(1);
        for e in &mut self.edges {
            e.color = e.color_class.map(|c| dimension_color(c, max));
        }
    }
}

/// Facets of a 3-polytope as vertex cycles oriented by the outer normal.
fn oriented_facets(p: &Polytope) -> Vec<Vec<usize>> {
    use num_traits::Signed;
    let g = p.graph();
    let v = p.vertices();
    (0..p.facets().len())
        .map(|f| {
            let verts = p.facet_vertices(f);
            let mut cycle = vec![verts[0]];
            while cycle.len() < verts.len() {
                let last = *cycle.last().expect("nonempty");
                let next = verts
                    .iter()
                    .copied()
                    .find(|&w| g.has_edge(last, w) && !cycle.contains(&w))
                    .expect("facet of a 3-polytope is a cycle");
                cycle.push(next);
            }
            let a = crate::geom::sub(&v[cycle[1]], &v[cycle[0]]);
            let b = crate::geom::sub(&v[cycle[2]], &v[cycle[0]]);
            let n = [
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ];
            if crate::geom::dot(&n, &p.facets()[f].normal).is_negative() {
                cycle.reverse();
            }
            cycle
        })
        .collect()
}

const STOPS: [[u8; 3]; 4] = [[0xe0, 0x20, 0x20], [0xb0, 0x30, 0x90], [0x70, 0x30, 0xb0], [0x20, 0x30, 0xe0]];

/// Colour for `dim` on the red → purple → purple → blue scale, with 1 at red
/// and `max` at blue.
pub fn dimension_color(dim: usize, max: usize) -> String {
    let t = if max <= 1 { 0.0 } else { (dim.clamp(1, max) - 1) as f64 / (max - 1) as f64 };
    let x = t * (STOPS.len() - 1) as f64;
    let i = (x.floor() as usize).min(STOPS.len() - 2);
    let f = x - i as f64;
    let c: Vec<u8> =
        (0..3).map(|k| (STOPS[i][k] as f64 * (1.0 - f) + STOPS[i + 1][k] as f64 * f).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}
