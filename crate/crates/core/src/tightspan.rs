//! Tight spans of finite metric spaces.
//!
//! The tight span of a metric `δ` on `n` taxa is the bounded subcomplex of
//! `P_δ = {x ∈ R^n : x_i + x_j >= δ(i, j)}`. It is a tree exactly when the
//! metric is tree-like, and its dimension measures how far it is from one.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    format_rational, int, parse_rational, to_f64, vertex_enumeration, Face, Graph, Halfspace, Node, NodeKind,
    Point, Polyhedron, Rational,
};
use crate::scene::{EdgeKind, Metadata, Scene};
use crate::spring::{self, desired_lengths_from_coords, Norm, SpringParams};

/// Symmetric matrix of nonnegative distances between labelled taxa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    labels: Vec<String>,
    d: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub labels: Vec<String>,
    /// Full square matrix, entries as `"p/q"` or decimal strings.
    pub matrix: Vec<Vec<String>>,
}

impl Metric {
    pub fn new(labels: Vec<String>, d: Vec<Vec<Rational>>) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: labels.len() });
        }
        for (i, row) in d.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMetric(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if !row[i].is_zero() {
                return Err(Error::InvalidMetric(format!("diagonal entry {i} is nonzero")));
            }
            for j in 0..n {
                if row[j].is_negative() {
                    return Err(Error::InvalidMetric(format!("entry ({i}, {j}) is negative")));
                }
                if row[j] != d[j][i] {
                    return Err(Error::InvalidMetric(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        Ok(Metric { labels, d })
    }

    /// Metric with taxa labelled `t1, ..., tn`.
    pub fn unlabelled(d: Vec<Vec<Rational>>) -> Result<Self> {
        let labels = (1..=d.len()).map(|i| format!("t{i}")).collect();
        Metric::new(labels, d)
    }

    /// Path-length metric of a weighted tree restricted to `taxa`.
    pub fn from_tree(tree: &Graph, weights: &[Rational], taxa: &[usize]) -> Result<Self> {
        if tree.edge_count() + 1 != tree.node_count() || !crate::geom::is_connected(tree) {
            return Err(Error::InvalidParameter("not a tree".into()));
        }
        if weights.len() != tree.edge_count() {
            return Err(Error::DimensionMismatch { expected: tree.edge_count(), found: weights.len() });
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidMetric("negative tree weight".into()));
        }
        let rows = taxa
            .iter()
            .map(|&s| {
                if s >= tree.node_count() {
                    return Err(Error::UnknownNode(s));
                }
                let mut dist: Vec<Option<Rational>> = vec![None; tree.node_count()];
                dist[s] = Some(Rational::zero());
                let mut stack = vec![s];
                while let Some(v) = stack.pop() {
                    for &w in tree.neighbors(v) {
                        if dist[w].is_none() {
                            let e = tree.edge_index(v, w).expect("tree edge");
                            dist[w] = Some(dist[v].clone().expect("reached") + &weights[e]);
                            stack.push(w);
                        }
                    }
                }
                Ok(taxa.iter().map(|&t| dist[t].clone().expect("connected")).collect())
            })
            .collect::<Result<_>>()?;
        Metric::new(taxa.iter().map(|&t| tree.node(t).label.clone()).collect(), rows)
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.d[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.d[i]
    }

    /// Largest distance.
    pub fn max(&self) -> Rational {
        self.d.iter().flatten().fold(Rational::zero(), |m, x| if *x > m { x.clone() } else { m })
    }

    /// Triples `(i, j, k)` with `δ(i, k) > δ(i, j) + δ(j, k)`.
    pub fn triangle_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for k in i + 1..n {
                for j in 0..n {
                    if j != i && j != k && self.d[i][k] > &self.d[i][j] + &self.d[j][k] {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn to_record(&self) -> MetricRecord {
        MetricRecord {
            labels: self.labels.clone(),
            matrix: self.d.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        }
    }

    pub fn from_record(r: &MetricRecord) -> Result<Self> {
        let d = r.matrix.iter().map(|row| row.iter().map(|s| parse_rational(s)).collect()).collect::<Result<_>>()?;
        Metric::new(r.labels.clone(), d)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_record()).expect("record serializes");
        s.push('\n');
        s
    }

    /// Text layout: the number of taxa, one label per line, then the matrix
    /// as upper-triangular rows (with or without the zero diagonal) or as
    /// full rows. Blank lines and `#` comments are ignored.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.len());
        for l in &self.labels {
            s.push_str(l);
            s.push('\n');
        }
        for (i, row) in self.d.iter().enumerate() {
            let cells: Vec<String> = row[i..].iter().map(format_rational).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses JSON (`{"labels": ..., "matrix": ...}`) or the text layout.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let r: MetricRecord = serde_json::from_str(text)?;
            return Metric::from_record(&r);
        }
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or(Error::EmptyInput)?
            .parse()
            .map_err(|_| Error::Parse("first line must be the number of taxa".into()))?;
        if n == 0 || n > 4096 {
            return Err(Error::Malformed(format!("unsupported number of taxa {n}")));
        }
        let labels: Vec<String> = lines.by_ref().take(n).map(str::to_string).collect();
        if labels.len() != n {
            return Err(Error::Malformed("missing labels".into()));
        }
        let rows: Vec<Vec<Rational>> = lines
            .map(|l| l.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        let mut d = vec![vec![Rational::zero(); n]; n];
        if lens.len() == n && lens.iter().all(|&l| l == n) {
            d = rows;
        } else if lens.len() == n && lens.iter().enumerate().all(|(i, &l)| l == n - i) {
            for (i, row) in rows.into_iter().enumerate() {
                for (k, x) in row.into_iter().enumerate() {
                    d[i][i + k] = x.clone();
                    d[i + k][i] = x;
                }
            }
        } else if lens.len() + 1 == n && lens.iter().enumerate().all(|(i, &l)| l == n - 1 - i) {
            for (i, row) in rows.into_iter().enumerate() {
                for (k, x) in row.into_iter().enumerate() {
                    d[i][i + 1 + k] = x.clone();
                    d[i + 1 + k][i] = x;
                }
            }
        } else {
            return Err(Error::Malformed(format!("matrix rows of lengths {lens:?} do not fit {n} taxa")));
        }
        Metric::new(labels, d)
    }
}

/// `x_i + x_j >= δ(i, j)` for all `i <= j`, as `a·x <= b` rows.
pub fn metric_inequalities(m: &Metric) -> Vec<Halfspace> {
    let n = m.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let mut a = vec![Rational::zero(); n];
            a[i] -= int(1);
            a[j] -= int(1);
            out.push(Halfspace::new(a, -m.get(i, j).clone()));
        }
    }
    out
}

pub fn polyhedron_of_metric(m: &Metric) -> Result<Polyhedron> {
    vertex_enumeration(&metric_inequalities(m))
}

/// Bounded faces of a polyhedron with their dimensions.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    pub vertices: Vec<Point>,
    /// Nonempty bounded faces, sorted by dimension.
    pub faces: Vec<Face>,
}

impl BoundedComplex {
    pub fn dim(&self) -> isize {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(-1)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces.iter().filter(|f| f.dim == 1).map(|f| (f.vertices[0], f.vertices[1])).collect()
    }

    /// Vertices and edges of the complex.
    pub fn skeleton(&self) -> Graph {
        Graph::from_edges(self.vertices.len(), self.edges()).expect("edges join distinct vertices")
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for face in &self.faces {
            f[face.dim as usize] += 1;
        }
        f
    }
}

pub fn bounded_subcomplex(p: &Polyhedron) -> BoundedComplex {
    BoundedComplex { vertices: p.vertices().to_vec(), faces: p.bounded_faces() }
}

/// Highest dimension of a bounded face containing each edge, in the order
/// of [`BoundedComplex::edges`].
pub fn edge_dim_colors(t: &BoundedComplex) -> Vec<usize> {
    let mut best: BTreeMap<(usize, usize), isize> = t.edges().into_iter().map(|e| (e, 1)).collect();
    for f in t.faces.iter().filter(|f| f.dim > 1) {
        for (e, d) in best.iter_mut() {
            if *d < f.dim && f.vertices.binary_search(&e.0).is_ok() && f.vertices.binary_search(&e.1).is_ok() {
                *d = f.dim;
            }
        }
    }
    t.edges().iter().map(|e| best[e] as usize).collect()
}

/// Vertex of `t` at the distance row of each taxon, if present.
pub fn taxon_vertices(m: &Metric, t: &BoundedComplex) -> Vec<Option<usize>> {
    (0..m.len()).map(|i| t.vertices.iter().position(|v| v.as_slice() == m.row(i))).collect()
}

/// Whether the tight span has no face of dimension two or more.
pub fn is_treelike(m: &Metric) -> Result<bool> {
    Ok(bounded_subcomplex(&polyhedron_of_metric(m)?).dim() <= 1)
}

/// A metric with its polyhedron, bounded subcomplex and taxon vertices.
#[derive(Clone, Debug)]
pub struct TightSpan {
    pub metric: Metric,
    pub polyhedron: Polyhedron,
    pub complex: BoundedComplex,
    pub taxa: Vec<Option<usize>>,
}

pub fn tight_span(m: &Metric) -> Result<TightSpan> {
    let polyhedron = polyhedron_of_metric(m)?;
    let complex = bounded_subcomplex(&polyhedron);
    let taxa = taxon_vertices(m, &complex);
    Ok(TightSpan { metric: m.clone(), polyhedron, complex, taxa })
}

impl TightSpan {
    /// Skeleton with taxon labels on matched vertices.
    pub fn labelled_skeleton(&self) -> Graph {
        let mut names: Vec<Vec<&str>> = vec![Vec::new(); self.complex.vertices.len()];
        for (i, v) in self.taxa.iter().enumerate() {
            if let Some(v) = v {
                names[*v].push(&self.metric.labels[i]);
            }
        }
        let nodes = names
            .into_iter()
            .map(|n| {
                if n.is_empty() {
                    Node { label: String::new(), kind: NodeKind::Generic }
                } else {
                    Node { label: n.join(","), kind: NodeKind::Taxon }
                }
            })
            .collect();
        let mut g = Graph::with_nodes(nodes);
        for (a, b) in self.complex.edges() {
            g.add_edge(a, b).expect("edges join distinct vertices");
        }
        g
    }

    /// Max-norm length of each skeleton edge.
    pub fn edge_lengths(&self) -> Vec<f64> {
        self.complex
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (&self.complex.vertices[a], &self.complex.vertices[b]);
                p.iter().zip(q).map(|(x, y)| to_f64(&(x - y).abs())).fold(0.0, f64::max)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightSpanMode {
    /// Every edge has the default spring length.
    Combinatorial,
    /// Edge `uv` has spring length proportional to `‖u − v‖_∞`.
    ApproximateMetric,
}

/// Spring drawing of the skeleton. Edges carry the dimension colour class in
/// combinatorial mode. In approximate metric mode the max-norm lengths are
/// multiplied by one common factor, recorded as `length_scale`: the one
/// from [`spring::stable_length_scale`], or the one bringing their mean to
/// `params.length` when that is set.
pub fn visualize_tightspan(ts: &TightSpan, mode: TightSpanMode, params: &SpringParams) -> Result<(Scene, bool)> {
    let g = ts.labelled_skeleton();
    let mut scale = 1.0;
    let lengths = match mode {
        TightSpanMode::Combinatorial => None,
        TightSpanMode::ApproximateMetric => {
            let coords: Vec<Vec<f64>> =
                ts.complex.vertices.iter().map(|v| v.iter().map(to_f64).collect()).collect();
            let raw = desired_lengths_from_coords(&g, &coords, Norm::Maxnorm)?;
            scale = match params.length {
                Some(l) => l / (raw.iter().sum::<f64>() / raw.len().max(1) as f64),
                None => spring::stable_length_scale(&g, &raw, params.delta_visc),
            };
            Some(raw.iter().map(|l| l * scale).collect::<Vec<_>>())
        }
    };
    let run = spring::run(&g, params, None, lengths.as_deref())?;
    let positions: Vec<Vec<f64>> = run.state.positions.iter().map(|p| p.to_vec()).collect();
    let meta = Metadata::new("tightspan")
        .with_param("mode", mode)
        .with_param("spring", params)
        .with_param("dim", ts.complex.dim())
        .with_param("length_scale", scale)
        .with_param("converged", run.converged)
        .with_seed(params.seed);
    let mut scene = Scene::from_graph(&g, &positions, meta)?;
    let dims = edge_dim_colors(&ts.complex);
    // Scene edges follow graph edge order; map them back to complex edges.
    let by_pair: BTreeMap<(usize, usize), usize> =
        ts.complex.edges().into_iter().zip(dims).map(|((a, b), d)| ((a.min(b), a.max(b)), d)).collect();
    for e in &mut scene.edges {
        e.kind = EdgeKind::Primal;
        if mode == TightSpanMode::Combinatorial {
            e.color_class = Some(by_pair[&(e.source, e.target)]);
        }
    }
    scene.color_edges_by_class();
    Ok((scene, run.converged))
}
