//! JSON file formats for polytopes, polyhedra and graphs.
//!
//! Rationals are written as `"p/q"` strings (`"p"` for integers), so a
//! write–read–write cycle is byte-identical.

use serde::{Deserialize, Serialize};

use super::graph::{Graph, Node};
use super::polyhedron::{vertex_enumeration, Polyhedron};
use super::polytope::{convex_hull, Polytope};
use super::rational::{format_rational, parse_rational, Halfspace, Point};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub a: Vec<String>,
    pub b: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronRecord {
    pub dim: usize,
    #[serde(default)]
    pub vertices: Vec<Vec<String>>,
    #[serde(default)]
    pub inequalities: Vec<InequalityRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<InequalityRecord>,
    #[serde(default)]
    pub rays: Vec<Vec<String>>,
}

fn point_text(p: &[crate::geom::Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

fn parse_point(p: &[String], dim: usize) -> Result<Point> {
    if p.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
    }
    p.iter().map(|s| parse_rational(s)).collect()
}

fn parse_halfspace(r: &InequalityRecord, dim: usize) -> Result<Halfspace> {
    Ok(Halfspace::new(parse_point(&r.a, dim)?, parse_rational(&r.b)?))
}

fn halfspace_record(h: &Halfspace) -> InequalityRecord {
    InequalityRecord { a: point_text(&h.normal), b: format_rational(&h.offset) }
}

impl PolyhedronRecord {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolyhedronRecord {
            dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| point_text(v)).collect(),
            inequalities: p.facets().iter().map(halfspace_record).collect(),
            equations: p
                .equations()
                .iter()
                .map(|(a, b)| InequalityRecord { a: point_text(a), b: format_rational(b) })
                .collect(),
            rays: Vec::new(),
        }
    }

    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        PolyhedronRecord {
            dim: p.dim(),
            vertices: p.vertices().iter().map(|v| point_text(v)).collect(),
            inequalities: p.inequalities().iter().map(halfspace_record).collect(),
            equations: Vec::new(),
            rays: p.rays().iter().map(|r| point_text(r)).collect(),
        }
    }

    fn halfspaces(&self) -> Result<Vec<Halfspace>> {
        let mut h: Vec<Halfspace> =
            self.inequalities.iter().map(|r| parse_halfspace(r, self.dim)).collect::<Result<_>>()?;
        for e in &self.equations {
            let eq = parse_halfspace(e, self.dim)?;
            h.push(Halfspace::new(eq.normal.iter().map(|x| -x).collect(), -eq.offset.clone()));
            h.push(eq);
        }
        Ok(h)
    }

    /// Builds the polytope from the vertices when present, else from the
    /// inequalities (and equations).
    pub fn to_polytope(&self) -> Result<Polytope> {
        if !self.rays.is_empty() {
            return Err(Error::Malformed("a polytope has no rays".into()));
        }
        if !self.vertices.is_empty() {
            let pts: Vec<Point> = self.vertices.iter().map(|p| parse_point(p, self.dim)).collect::<Result<_>>()?;
            let poly = convex_hull(&pts)?;
            let h = self.halfspaces()?;
            if let Some(bad) = h.iter().find(|h| !poly.vertices().iter().all(|v| h.contains(v))) {
                return Err(Error::Malformed(format!("vertex violates inequality {bad}")));
            }
            return Ok(poly);
        }
        let h = self.halfspaces()?;
        if h.is_empty() {
            return Err(Error::EmptyInput);
        }
        Polytope::from_inequalities(&h)
    }

    pub fn to_polyhedron(&self) -> Result<Polyhedron> {
        let h = self.halfspaces()?;
        if h.is_empty() {
            return Err(Error::EmptyInput);
        }
        vertex_enumeration(&h)
    }
}

pub fn polytope_to_json(p: &Polytope) -> String {
    let mut s = serde_json::to_string_pretty(&PolyhedronRecord::from_polytope(p)).expect("records serialize");
    s.push('\n');
    s
}

pub fn polytope_from_json(text: &str) -> Result<Polytope> {
    let rec: PolyhedronRecord = serde_json::from_str(text)?;
    rec.to_polytope()
}

pub fn polyhedron_to_json(p: &Polyhedron) -> String {
    let mut s = serde_json::to_string_pretty(&PolyhedronRecord::from_polyhedron(p)).expect("records serialize");
    s.push('\n');
    s
}

pub fn polyhedron_from_json(text: &str) -> Result<Polyhedron> {
    let rec: PolyhedronRecord = serde_json::from_str(text)?;
    rec.to_polyhedron()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeList {
    Count(usize),
    Nodes(Vec<Node>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub nodes: NodeList,
    pub edges: Vec<[usize; 2]>,
}

pub fn graph_to_json(g: &Graph) -> String {
    let rec = GraphRecord {
        nodes: NodeList::Nodes(g.nodes().to_vec()),
        edges: g.edges().iter().map(|e| [e.a, e.b]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&rec).expect("records serialize");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let rec: GraphRecord = serde_json::from_str(text)?;
    let mut g = match rec.nodes {
        NodeList::Count(n) if n > 1_000_000 => return Err(Error::Malformed("too many nodes".into())),
        NodeList::Count(n) => Graph::new(n),
        NodeList::Nodes(nodes) => Graph::with_nodes(nodes),
    };
    for [u, v] in rec.edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}
