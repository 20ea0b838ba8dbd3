//! Tropical polytopes as bounded subcomplexes of
//! `T_C = {(y, z) ∈ W : y_i + z_j <= c_ij}`, where `W` is `R^{m+n}` modulo
//! `(1, ..., 1, −1, ..., −1)`. Tropical addition is `min`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    format_rational, int, parse_rational, to_f64, vertex_enumeration, Graph, Halfspace, Node, NodeKind, Point,
    Polyhedron, Rational,
};
use crate::scene::{EdgeKind, Metadata, Scene};
use crate::spring::{self, SpringParams};
use crate::tightspan::{bounded_subcomplex, BoundedComplex};

/// Colour of tropical vertices in scenes.
pub const TROPICAL_VERTEX_COLOR: &str = "#e02020";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: Vec<Vec<Rational>>,
}

impl TropicalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.first().map(Vec::len).ok_or(Error::EmptyInput)?;
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        Ok(TropicalMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        TropicalMatrix::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    /// Rows without row `r`.
    pub fn without_row(&self, r: usize) -> Result<Self> {
        let rows = self.rows.iter().enumerate().filter(|&(i, _)| i != r).map(|(_, x)| x.clone()).collect();
        TropicalMatrix::new(rows)
    }

    /// Comma-separated rows; blank lines and `#` comments are skipped.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| l.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        TropicalMatrix::new(rows)
    }

    /// JSON array of rows; entries are numbers or rational strings.
    pub fn parse_json(text: &str) -> Result<Self> {
        let v: Vec<Vec<serde_json::Value>> = serde_json::from_str(text)?;
        let rows = v
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x {
                        serde_json::Value::String(s) => parse_rational(s),
                        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                        other => Err(Error::Parse(format!("not a matrix entry: {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        TropicalMatrix::new(rows)
    }

    /// JSON when the text starts with `[`, CSV otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('[') {
            Self::parse_json(text)
        } else {
            Self::parse_csv(text)
        }
    }

    pub fn to_csv(&self) -> String {
        self.rows.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(",") + "\n").collect()
    }

    pub fn to_json(&self) -> String {
        let v: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        serde_json::to_string(&v).expect("matrix serializes") + "\n"
    }
}

/// `M(m, n)` with entries `i·j` for `i = 1..m` and `j = 0..n`.
pub fn tropical_cyclic(m: usize, n: usize) -> Result<TropicalMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("tropical cyclic polytope needs m, n >= 1".into()));
    }
    TropicalMatrix::new((1..=m).map(|i| (0..=n).map(|j| int((i * j) as i64)).collect()).collect())
}

/// Rows are the permutations of `(1, ..., n)` in lexicographic order.
pub fn tropical_permutohedron_matrix(n: usize) -> Result<TropicalMatrix> {
    TropicalMatrix::new(crate::geom::construct::permutation_vectors(n))
}

/// Coordinate pinned to zero to pick a chart of `W`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    #[default]
    PinY1,
    PinZ1,
}

impl Chart {
    /// Full `(y, z)` from chart coordinates.
    fn expand(self, m: usize, x: &[Rational]) -> Point {
        let mut full = Vec::with_capacity(x.len() + 1);
        match self {
            Chart::PinY1 => {
                full.push(Rational::zero());
                full.extend_from_slice(x);
            }
            Chart::PinZ1 => {
                full.extend_from_slice(&x[..m]);
                full.push(Rational::zero());
                full.extend_from_slice(&x[m..]);
            }
        }
        full
    }

    /// Index of variable `k` of `(y, z)` in the chart, `None` if pinned.
    fn index(self, m: usize, k: usize) -> Option<usize> {
        match self {
            Chart::PinY1 => k.checked_sub(1),
            Chart::PinZ1 if k < m => Some(k),
            Chart::PinZ1 if k == m => None,
            Chart::PinZ1 => Some(k - 1),
        }
    }
}

/// `y_i + z_j <= c_ij` in the `m + n − 1` chart coordinates.
pub fn tropical_inequalities(c: &TropicalMatrix, chart: Chart) -> Vec<Halfspace> {
    let (m, n) = (c.m(), c.n());
    let d = m + n - 1;
    let mut out = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut a = vec![Rational::zero(); d];
            for k in [i, m + j] {
                if let Some(x) = chart.index(m, k) {
                    a[x] += int(1);
                }
            }
            out.push(Halfspace::new(a, c.get(i, j).clone()));
        }
    }
    out
}

pub fn polyhedron_t_c(c: &TropicalMatrix) -> Result<Polyhedron> {
    polyhedron_t_c_in(c, Chart::PinY1)
}

pub fn polyhedron_t_c_in(c: &TropicalMatrix, chart: Chart) -> Result<Polyhedron> {
    vertex_enumeration(&tropical_inequalities(c, chart))
}

/// Representative of a point of `W` with `y_1 = 0`.
pub fn canonical(m: usize, yz: &[Rational]) -> Point {
    let s = yz[0].clone();
    yz.iter().enumerate().map(|(k, x)| if k < m { x - &s } else { x + &s }).collect()
}

/// `x − x_1 (1, ..., 1)` without its first entry.
fn normalize_drop_first(x: &[Rational]) -> Point {
    x[1..].iter().map(|v| v - &x[0]).collect()
}

/// Min-plus projection of `x` onto the tropical span of `gens`:
/// `min_r (λ_r + g_r)` with `λ_r = max_j (x_j − g_rj)`.
pub fn min_plus_projection(gens: &[&[Rational]], x: &[Rational]) -> Option<Point> {
    let mut out: Option<Point> = None;
    for g in gens {
        let lambda = x.iter().zip(g.iter()).map(|(a, b)| a - b).max()?;
        let p: Point = g.iter().map(|b| b + &lambda).collect();
        out = Some(match out {
            None => p,
            Some(o) => o.into_iter().zip(p).map(|(a, b)| a.min(b)).collect(),
        });
    }
    out
}

/// Whether `x` lies in the min-plus span of `gens`.
pub fn in_tropical_span(gens: &[&[Rational]], x: &[Rational]) -> bool {
    min_plus_projection(gens, x).is_some_and(|p| p == x)
}

/// Rows forming the inclusion-minimal generating set. Rows are dropped in
/// order while redundant, so of several equal rows the last one stays.
pub fn tropical_vertex_rows(c: &TropicalMatrix) -> Vec<usize> {
    let mut keep: Vec<usize> = (0..c.m()).collect();
    for r in 0..c.m() {
        let others: Vec<&[Rational]> = keep.iter().filter(|&&i| i != r).map(|&i| c.rows[i].as_slice()).collect();
        if in_tropical_span(&others, &c.rows[r]) {
            keep.retain(|&i| i != r);
        }
    }
    keep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The `y` block: `m` coordinates.
    FirstM,
    /// The `z` block: `n` coordinates.
    LastN,
}

#[derive(Clone, Debug)]
pub struct TropicalComplex {
    pub matrix: TropicalMatrix,
    pub chart: Chart,
    pub polyhedron: Polyhedron,
    /// Bounded subcomplex in chart coordinates; every vertex is a pseudo-vertex.
    pub complex: BoundedComplex,
    /// Irredundant generator rows.
    pub vertex_rows: Vec<usize>,
    /// Pseudo-vertex of each generator row.
    pub row_vertices: Vec<Option<usize>>,
}

pub fn tropical_polytope(c: &TropicalMatrix) -> Result<TropicalComplex> {
    tropical_polytope_in(c, Chart::PinY1)
}

pub fn tropical_polytope_in(c: &TropicalMatrix, chart: Chart) -> Result<TropicalComplex> {
    let polyhedron = polyhedron_t_c_in(c, chart)?;
    let complex = bounded_subcomplex(&polyhedron);
    let mut t = TropicalComplex {
        matrix: c.clone(),
        chart,
        polyhedron,
        complex,
        vertex_rows: tropical_vertex_rows(c),
        row_vertices: Vec::new(),
    };
    let z: Vec<Point> = (0..t.complex.vertices.len()).map(|v| normalize_drop_first(&t.z(v))).collect();
    t.row_vertices = c.rows.iter().map(|r| z.iter().position(|p| *p == normalize_drop_first(r))).collect();
    Ok(t)
}

impl TropicalComplex {
    pub fn pseudo_vertex_count(&self) -> usize {
        self.complex.vertices.len()
    }

    /// Pseudo-vertices that are tropical vertices.
    pub fn tropical_vertices(&self) -> BTreeSet<usize> {
        self.vertex_rows.iter().filter_map(|&r| self.row_vertices[r]).collect()
    }

    /// Vertex `v` as a canonical point `(y, z)` of `W` with `y_1 = 0`.
    pub fn point(&self, v: usize) -> Point {
        canonical(self.matrix.m(), &self.chart.expand(self.matrix.m(), &self.complex.vertices[v]))
    }

    fn z(&self, v: usize) -> Point {
        self.point(v)[self.matrix.m()..].to_vec()
    }

    /// Chosen block of each pseudo-vertex with the first entry cleared and
    /// dropped.
    pub fn project(&self, side: Side) -> Result<Vec<Point>> {
        let m = self.matrix.m();
        let d = match side {
            Side::FirstM => m - 1,
            Side::LastN => self.matrix.n() - 1,
        };
        if d > 3 {
            return Err(Error::ProjectionTooLarge(d));
        }
        Ok((0..self.complex.vertices.len())
            .map(|v| {
                let p = self.point(v);
                let block = match side {
                    Side::FirstM => &p[..m],
                    Side::LastN => &p[m..],
                };
                normalize_drop_first(block)
            })
            .collect())
    }

    fn labelled_graph(&self) -> Graph {
        let tv = self.tropical_vertices();
        let nodes = (0..self.complex.vertices.len())
            .map(|v| {
                let rows: Vec<String> = self
                    .vertex_rows
                    .iter()
                    .filter(|&&r| self.row_vertices[r] == Some(v))
                    .map(|r| format!("r{}", r + 1))
                    .collect();
                let kind = if tv.contains(&v) { NodeKind::Primal } else { NodeKind::Generic };
                Node { label: rows.join(","), kind }
            })
            .collect();
        let mut g = Graph::with_nodes(nodes);
        for (a, b) in self.complex.edges() {
            g.add_edge(a, b).expect("edges join distinct vertices");
        }
        g
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "side")]
pub enum TropicalView {
    /// Affine image in at most three coordinates.
    Projection(Side),
    /// Spring drawing with constant edge length.
    Combinatorial,
}

/// Scene of the tropical polytope; tropical vertices are red and labelled
/// by their rows.
pub fn visualize_tropical(t: &TropicalComplex, view: TropicalView, params: &SpringParams) -> Result<Scene> {
    let g = t.labelled_graph();
    let mut meta = Metadata::new("tropical")
        .with_param("view", view)
        .with_param("m", t.matrix.m())
        .with_param("n", t.matrix.n())
        .with_param("matrix", t.matrix.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect::<Vec<Vec<_>>>());
    let positions: Vec<Vec<f64>> = match view {
        TropicalView::Projection(side) => t
            .project(side)?
            .iter()
            .map(|p| {
                let mut x: Vec<f64> = p.iter().map(to_f64).collect();
                x.resize(x.len().max(2), 0.0);
                x
            })
            .collect(),
        TropicalView::Combinatorial => {
            meta = meta.with_param("spring", params).with_seed(params.seed);
            let run = spring::run(&g, params, None, None)?;
            meta = meta.with_param("converged", run.converged);
            run.state.positions.iter().map(|p| p.to_vec()).collect()
        }
    };
    let mut scene = Scene::from_graph(&g, &positions, meta)?;
    let tv = t.tropical_vertices();
    for n in &mut scene.nodes {
        if tv.contains(&n.id) {
            n.color = Some(TROPICAL_VERTEX_COLOR.to_string());
        }
    }
    for e in &mut scene.edges {
        e.kind = EdgeKind::Primal;
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ratio;

    #[test]
    fn one_by_one_is_a_halfline() {
        let c = TropicalMatrix::from_ints(&[&[3]]).unwrap();
        let p = polyhedron_t_c(&c).unwrap();
        assert_eq!(p.vertices(), &[vec![int(3)]]);
        assert_eq!(p.rays(), &[vec![int(-1)]]);
        let t = tropical_polytope(&c).unwrap();
        assert_eq!(t.pseudo_vertex_count(), 1);
    }

    #[test]
    fn cyclic_matrix_entries() {
        let c = tropical_cyclic(2, 1).unwrap();
        assert_eq!(c.rows(), &[vec![int(0), int(1)], vec![int(0), int(2)]]);
        let c = tropical_cyclic(6, 4).unwrap();
        assert_eq!((c.m(), c.n()), (6, 5));
        for i in 0..6 {
            for j in 0..5 {
                if i + 1 < 6 {
                    assert!(c.get(i + 1, j) >= c.get(i, j));
                }
                if j + 1 < 5 {
                    assert!(c.get(i, j + 1) > c.get(i, j));
                }
            }
        }
    }

    #[test]
    fn min_plus_projection_fixes_generators() {
        let a = [int(0), int(1), int(3)];
        let b = [int(0), int(2), int(0)];
        assert!(in_tropical_span(&[&a, &b], &a));
        assert!(in_tropical_span(&[&a, &b], &[int(5), int(6), int(8)]));
        assert!(!in_tropical_span(&[&a], &b));
    }

    #[test]
    fn duplicate_row_is_redundant() {
        let c = TropicalMatrix::new(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(2), int(1), int(1)],
        ])
        .unwrap();
        assert_eq!(tropical_vertex_rows(&c), vec![1, 2]);
    }

    #[test]
    fn matrix_formats() {
        let c = TropicalMatrix::parse("1,0,0\n0,1,0\n0,1/4,1\n").unwrap();
        assert_eq!(c.get(2, 1), &ratio(1, 4));
        assert_eq!(TropicalMatrix::parse(&c.to_json()).unwrap(), c);
        assert_eq!(TropicalMatrix::parse(&c.to_csv()).unwrap(), c);
        assert_eq!(TropicalMatrix::parse("[[1, 0.25], [\"1/2\", 3]]").unwrap().get(0, 1), &ratio(1, 4));
        assert!(TropicalMatrix::parse("1,2\n3\n").is_err());
        assert!(TropicalMatrix::parse("").is_err());
    }
}
