use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd;
use super::graph::{Graph, Node, NodeKind};
use super::lattice::FaceLattice;
use super::linalg;
use super::polyhedron::vertex_enumeration;
use super::rational::{barycenter, dot, primitive_integer_vector, sub, Halfspace, Point, Rational};
use crate::error::{Error, Result};

/// Coordinate chart of an affine subspace: the subspace is the graph of an
/// affine map from the `pivots` coordinates to the remaining ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    ambient_dim: usize,
    pivots: Vec<usize>,
    /// `(j, m, c)`: `x_j = c + Σ_k m[k] x_{pivots[k]}` for non-pivot `j`.
    dependent: Vec<(usize, Point, Rational)>,
}

impl AffineChart {
    pub fn identity(d: usize) -> Self {
        AffineChart { ambient_dim: d, pivots: (0..d).collect(), dependent: Vec::new() }
    }

    /// Chart of the affine hull of `points`.
    pub fn of_points(points: &[Point]) -> Self {
        let d = points[0].len();
        let base = &points[0];
        let diffs: Vec<Point> = points[1..].iter().map(|p| sub(p, base)).collect();
        let (red, pivots) = if diffs.is_empty() { (Vec::new(), Vec::new()) } else { linalg::rref(&diffs) };
        let dependent = (0..d)
            .filter(|j| !pivots.contains(j))
            .map(|j| {
                let m: Point = red.iter().map(|row| row[j].clone()).collect();
                let c = &base[j] - pivots.iter().zip(&m).fold(Rational::zero(), |acc, (&p, mk)| acc + mk * &base[p]);
                (j, m, c)
            })
            .collect();
        AffineChart { ambient_dim: d, pivots, dependent }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_identity(&self) -> bool {
        self.dependent.is_empty()
    }

    pub fn project(&self, x: &[Rational]) -> Point {
        self.pivots.iter().map(|&p| x[p].clone()).collect()
    }

    pub fn lift(&self, y: &[Rational]) -> Point {
        let mut x = vec![Rational::zero(); self.ambient_dim];
        for (&p, v) in self.pivots.iter().zip(y) {
            x[p] = v.clone();
        }
        for (j, m, c) in &self.dependent {
            x[*j] = c + dot(m, y);
        }
        x
    }

    /// Lifts a direction (linear part only).
    pub fn lift_direction(&self, y: &[Rational]) -> Point {
        let mut x = vec![Rational::zero(); self.ambient_dim];
        for (&p, v) in self.pivots.iter().zip(y) {
            x[p] = v.clone();
        }
        for (j, m, _) in &self.dependent {
            x[*j] = dot(m, y);
        }
        x
    }

    /// Ambient inequality for a chart inequality (zero on dependent coordinates).
    pub fn lift_halfspace(&self, h: &Halfspace) -> Halfspace {
        let mut a = vec![Rational::zero(); self.ambient_dim];
        for (&p, v) in self.pivots.iter().zip(&h.normal) {
            a[p] = v.clone();
        }
        Halfspace::new(a, h.offset.clone())
    }

    /// Equations `a·x = b` cutting out the subspace, with primitive integral `a`.
    pub fn equations(&self) -> Vec<(Point, Rational)> {
        self.dependent
            .iter()
            .map(|(j, m, c)| {
                let mut a = vec![Rational::zero(); self.ambient_dim];
                a[*j] = Rational::one();
                for (&p, mk) in self.pivots.iter().zip(m) {
                    a[p] = -mk.clone();
                }
                let ints = primitive_integer_vector(&a);
                let k = Rational::from_integer(ints[*j].clone());
                (ints.into_iter().map(Rational::from_integer).collect(), c * k)
            })
            .collect()
    }
}

/// Bounded polyhedron with vertex and facet descriptions and incidences.
///
/// Facets are stored in ambient coordinates with integral primitive normals
/// and are sorted, so equal polytopes compare equal. When the vertices do
/// not span the ambient space, the facets live in the pivot coordinates of
/// [`AffineChart`] and `equations` cut out the affine hull.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    vertices: Vec<Point>,
    facets: Vec<Halfspace>,
    chart: AffineChart,
    /// Per facet, the incident vertices.
    incidence: Vec<FixedBitSet>,
}

/// Convex hull of a finite point set. Points that are not vertices are
/// dropped; the surviving vertices keep their input order.
pub fn convex_hull(points: &[Point]) -> Result<Polytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.len() });
    }
    let mut unique: Vec<Point> = Vec::new();
    for p in points {
        if !unique.contains(p) {
            unique.push(p.clone());
        }
    }
    let chart = AffineChart::of_points(&unique);
    let k = chart.dim();
    if k == 0 {
        return Ok(Polytope { vertices: unique, facets: Vec::new(), chart, incidence: Vec::new() });
    }
    let local: Vec<Point> = unique.iter().map(|p| chart.project(p)).collect();

    // Facets (b, a) with b - a·p >= 0 for every point.
    let rows: Vec<Vec<BigInt>> = local
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(k + 1);
            row.push(Rational::one());
            row.extend(p.iter().map(|x| -x));
            primitive_integer_vector(&row)
        })
        .collect();
    let rays = dd::extreme_rays(&rows, k + 1)?;
    let mut facets: Vec<Halfspace> = rays
        .into_iter()
        .map(|r| {
            let b = Rational::from_integer(r[0].clone());
            let a: Point = r[1..].iter().cloned().map(Rational::from_integer).collect();
            Halfspace::new(a, b).normalized()
        })
        .collect();
    facets.sort();

    let tight: Vec<FixedBitSet> = local
        .iter()
        .map(|p| {
            let mut s = FixedBitSet::with_capacity(facets.len());
            for (i, f) in facets.iter().enumerate() {
                if f.slack(p).is_zero() {
                    s.insert(i);
                }
            }
            s
        })
        .collect();
    let keep: Vec<usize> = (0..unique.len())
        .filter(|&i| !(0..unique.len()).any(|j| j != i && tight[i].is_subset(&tight[j])))
        .collect();
    let vertices: Vec<Point> = keep.iter().map(|&i| unique[i].clone()).collect();
    let incidence = (0..facets.len())
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(vertices.len());
            for (v, &i) in keep.iter().enumerate() {
                if tight[i].contains(f) {
                    s.insert(v);
                }
            }
            s
        })
        .collect();
    let facets = facets.iter().map(|h| chart.lift_halfspace(h)).collect();
    Ok(Polytope { vertices, facets, chart, incidence })
}

impl Polytope {
    /// Polytope described by inequalities; errors when unbounded or empty.
    pub fn from_inequalities(inequalities: &[Halfspace]) -> Result<Self> {
        let p = vertex_enumeration(inequalities)?;
        if !p.is_bounded() {
            return Err(Error::Malformed("inequalities describe an unbounded polyhedron".into()));
        }
        convex_hull(p.vertices())
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.chart.ambient_dim()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    /// Affine hull equations (empty for full-dimensional polytopes).
    pub fn equations(&self) -> Vec<(Point, Rational)> {
        self.chart.equations()
    }

    /// Facets plus each hull equation as a pair of opposite inequalities.
    pub fn h_representation(&self) -> Vec<Halfspace> {
        let mut h = self.facets.clone();
        for (a, b) in self.equations() {
            h.push(Halfspace::new(a.clone(), b.clone()));
            h.push(Halfspace::new(a.iter().map(|x| -x).collect(), -b));
        }
        h
    }

    pub fn incidence(&self) -> &[FixedBitSet] {
        &self.incidence
    }

    pub fn facet_vertices(&self, facet: usize) -> Vec<usize> {
        self.incidence[facet].ones().collect()
    }

    pub fn vertex_facets(&self, vertex: usize) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.incidence[f].contains(vertex)).collect()
    }

    /// Vertices in intrinsic (chart) coordinates.
    pub fn chart_vertices(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| self.chart.project(v)).collect()
    }

    /// Facets in intrinsic (chart) coordinates.
    pub fn chart_facets(&self) -> Vec<Halfspace> {
        self.facets
            .iter()
            .map(|h| Halfspace::new(self.chart.project(&h.normal), h.offset.clone()))
            .collect()
    }

    /// The same polytope in its intrinsic coordinates (full-dimensional).
    pub fn to_full_dimensional(&self) -> Polytope {
        if self.chart.is_identity() {
            return self.clone();
        }
        Polytope {
            vertices: self.chart_vertices(),
            facets: self.chart_facets(),
            chart: AffineChart::identity(self.dim()),
            incidence: self.incidence.clone(),
        }
    }

    pub fn vertex_barycenter(&self) -> Point {
        let refs: Vec<&Point> = self.vertices.iter().collect();
        barycenter(&refs)
    }

    pub fn face_lattice(&self) -> FaceLattice {
        if self.facets.is_empty() {
            // A point: the empty face and the point itself.
            return FaceLattice::from_incidence(&[], self.vertices.len());
        }
        FaceLattice::from_incidence(&self.incidence, self.vertices.len())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.face_lattice().f_vector()
    }

    /// Vertex-edge graph. Two vertices are adjacent iff no third vertex lies
    /// on every facet containing both.
    pub fn graph(&self) -> Graph {
        let n = self.vertices.len();
        let nodes = (0..n).map(|i| Node { label: i.to_string(), kind: NodeKind::Primal }).collect();
        let mut g = Graph::with_nodes(nodes);
        let vf: Vec<FixedBitSet> = (0..n)
            .map(|v| {
                let mut s = FixedBitSet::with_capacity(self.facets.len());
                for f in self.vertex_facets(v) {
                    s.insert(f);
                }
                s
            })
            .collect();
        if self.dim() == 0 {
            return g;
        }
        for u in 0..n {
            for v in u + 1..n {
                let mut common = vf[u].clone();
                common.intersect_with(&vf[v]);
                if common.count_ones(..) + 1 < self.dim() {
                    continue;
                }
                if (0..n).all(|w| w == u || w == v || !common.is_subset(&vf[w])) {
                    g.add_edge(u, v).expect("pairs visited once");
                }
            }
        }
        g
    }

    /// Facet-ridge graph: two facets are adjacent iff no third facet
    /// contains their common vertices.
    pub fn dual_graph(&self) -> Graph {
        let m = self.facets.len();
        let nodes = (0..m).map(|i| Node { label: format!("F{i}"), kind: NodeKind::Dual }).collect();
        let mut g = Graph::with_nodes(nodes);
        for f in 0..m {
            for h in f + 1..m {
                let mut common = self.incidence[f].clone();
                common.intersect_with(&self.incidence[h]);
                if self.dim() >= 2 && common.count_ones(..) + 1 < self.dim() {
                    continue;
                }
                if (0..m).all(|k| k == f || k == h || !common.is_subset(&self.incidence[k])) {
                    g.add_edge(f, h).expect("pairs visited once");
                }
            }
        }
        g
    }

    /// Every vertex has degree equal to the dimension.
    pub fn is_simple(&self) -> bool {
        let g = self.graph();
        (0..g.node_count()).all(|v| g.degree(v) == self.dim())
    }

    /// Polar polytope in intrinsic coordinates with respect to `center`
    /// (given in intrinsic coordinates, must be interior).
    pub fn polar_about(&self, center: &[Rational]) -> Result<Polytope> {
        let points: Vec<Point> = self
            .chart_facets()
            .iter()
            .map(|h| {
                let shifted = h.slack(center);
                if !shifted.is_positive() {
                    return Err(Error::InvalidParameter("polar center is not interior".into()));
                }
                Ok(h.normal.iter().map(|a| a / &shifted).collect())
            })
            .collect::<Result<_>>()?;
        convex_hull(&points)
    }

    /// Polar about the vertex barycenter.
    pub fn polar(&self) -> Result<Polytope> {
        let c = self.chart.project(&self.vertex_barycenter());
        self.polar_about(&c)
    }

    /// Index of the vertex equal to `x`, if any.
    pub fn vertex_index(&self, x: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == x)
    }

    /// Vertex coordinates as floats.
    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|v| v.iter().map(super::rational::to_f64).collect()).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.h_representation().iter().all(|h| h.contains(x))
    }
}
