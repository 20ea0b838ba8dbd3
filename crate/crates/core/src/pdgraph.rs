//! Primal-dual graphs of simplicial complexes: the 1-skeleton and the dual
//! graph side by side, joined by an artificial edge `(v, F)` for `v ∈ F`.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Graph, Node, NodeKind};
use crate::scene::{EdgeKind, Metadata, Scene};
use crate::spring::{self, SpringParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    /// Sorted vertex indices of each facet.
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let mut sorted = Vec::with_capacity(facets.len());
        for f in facets {
            if f.is_empty() {
                return Err(Error::Malformed("empty facet".into()));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownNode(v));
            }
            let set: BTreeSet<usize> = f.iter().copied().collect();
            if set.len() != f.len() {
                return Err(Error::Malformed(format!("facet {f:?} repeats a vertex")));
            }
            sorted.push(set);
        }
        for (i, a) in sorted.iter().enumerate() {
            for (j, b) in sorted.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    return Err(Error::Malformed(format!("facet {i} is contained in facet {j}")));
                }
            }
        }
        Ok(SimplicialComplex { vertices, facets: sorted.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    /// Vertices labelled `0..n`.
    pub fn unlabelled(n: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        SimplicialComplex::new((0..n).map(|i| i.to_string()).collect(), facets)
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// All nonempty faces.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for mask in 1u64..(1 << f.len()) {
                out.insert(f.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        out
    }

    /// `f_k` is the number of faces with `k + 1` vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for face in self.faces() {
            f[face.len() - 1] += 1;
        }
        f
    }

    pub fn skeleton(&self) -> Graph {
        let mut g = Graph::with_nodes(self.vertices.iter().map(|l| Node { label: l.clone(), kind: NodeKind::Primal }).collect());
        for f in &self.facets {
            for (i, &a) in f.iter().enumerate() {
                for &b in &f[i + 1..] {
                    if !g.has_edge(a, b) {
                        g.add_edge(a, b).expect("vertices of a facet");
                    }
                }
            }
        }
        g
    }

    /// Each ridge `F − v` with the facets containing it as a ridge.
    pub fn ridges(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for skip in 0..f.len() {
                let r: Vec<usize> = f.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                out.entry(r).or_default().push(i);
            }
        }
        out
    }

    /// Ridges in exactly one facet.
    pub fn boundary(&self) -> Result<SimplicialComplex> {
        let facets: Vec<Vec<usize>> =
            self.ridges().into_iter().filter(|(_, c)| c.len() == 1).map(|(r, _)| r).collect();
        SimplicialComplex::new(self.vertices.clone(), facets)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: SimplicialComplex = serde_json::from_str(text)?;
        SimplicialComplex::new(c.vertices, c.facets)
    }

    /// OFF-style text: optional `OFF` line, `nv nf [ne]`, `nv` vertex lines
    /// (their text becomes the label), then `k v_1 ... v_k` per facet.
    /// `#` starts a comment.
    pub fn from_off(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
        let mut header = lines.next().ok_or(Error::EmptyInput)?;
        if header.eq_ignore_ascii_case("off") {
            header = lines.next().ok_or_else(|| Error::Parse("missing counts".into()))?;
        }
        let counts = parse_usizes(header)?;
        let (nv, nf) = match counts[..] {
            [nv, nf] | [nv, nf, _] => (nv, nf),
            _ => return Err(Error::Parse(format!("bad counts line {header:?}"))),
        };
        let mut vertices = Vec::with_capacity(nv.min(1 << 16));
        for _ in 0..nv {
            vertices.push(lines.next().ok_or_else(|| Error::Parse("missing vertex line".into()))?.to_string());
        }
        let mut facets = Vec::with_capacity(nf.min(1 << 16));
        for _ in 0..nf {
            let l = lines.next().ok_or_else(|| Error::Parse("missing facet line".into()))?;
            let xs = parse_usizes(l)?;
            match xs.split_first() {
                Some((&k, rest)) if k == rest.len() => facets.push(rest.to_vec()),
                _ => return Err(Error::Parse(format!("bad facet line {l:?}"))),
            }
        }
        if let Some(l) = lines.next() {
            return Err(Error::Parse(format!("trailing line {l:?}")));
        }
        SimplicialComplex::new(vertices, facets)
    }

    /// JSON when the text starts with `{`, OFF-style otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_off(text)
        }
    }

    pub fn to_off(&self) -> String {
        let mut out = format!("OFF\n{} {}\n", self.vertices.len(), self.facets.len());
        for v in &self.vertices {
            out.push_str(v);
            out.push('\n');
        }
        for f in &self.facets {
            let idx: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("{} {}\n", f.len(), idx.join(" ")));
        }
        out
    }
}

fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace().map(|t| t.parse().map_err(|_| Error::Parse(format!("not an index: {t:?}")))).collect()
}

fn label_bits(bits: &[u8]) -> String {
    bits.iter().map(|b| b.to_string()).collect()
}

/// The facet-minimal triangulation of `[0,1]^4` with 16 facets: the eight
/// corners at odd vertices cut off, and the remaining cross-polytope on the
/// even vertices split along the diagonal `0000–1111`. Vertex `i` has
/// coordinates given by the bits of its label.
pub fn min_c4_triangulation() -> SimplicialComplex {
    let bits = |v: usize| -> [u8; 4] { [0, 1, 2, 3].map(|k| (v >> (3 - k) & 1) as u8) };
    let mut facets = Vec::new();
    for v in (0..16usize).filter(|v| v.count_ones() % 2 == 1) {
        let mut f = vec![v];
        f.extend((0..4).map(|k| v ^ (1 << k)));
        facets.push(f);
    }
    // Antipodal pairs of even vertices other than {0000, 1111}.
    let pairs = [(0b1100, 0b0011), (0b1010, 0b0101), (0b1001, 0b0110)];
    for choice in 0..8 {
        let mut f = vec![0, 15];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            f.push(if choice >> k & 1 == 0 { a } else { b });
        }
        facets.push(f);
    }
    SimplicialComplex::new((0..16).map(|v| label_bits(&bits(v))).collect(), facets).expect("valid triangulation")
}

/// Triangulated solid with genus-2 boundary: a `5 × 3 × 1` block of unit
/// cubes minus the cubes at `(1, 1)` and `(3, 1)`, each cube split into six
/// tetrahedra along its main diagonal. Labels are `x,y,z`.
pub fn genus_two_solid() -> SimplicialComplex {
    let (nx, ny) = (5usize, 3usize);
    let id = |x: usize, y: usize, z: usize| (z * (ny + 1) + y) * (nx + 1) + x;
    let vertices: Vec<String> =
        (0..2).flat_map(|z| (0..=ny).flat_map(move |y| (0..=nx).map(move |x| format!("{x},{y},{z}")))).collect();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut facets = Vec::new();
    for y in 0..ny {
        for x in 0..nx {
            if y == 1 && (x == 1 || x == 3) {
                continue;
            }
            for p in perms {
                let mut c = [x, y, 0];
                let mut f = vec![id(c[0], c[1], c[2])];
                for axis in p {
                    c[axis] += 1;
                    f.push(id(c[0], c[1], c[2]));
                }
                facets.push(f);
            }
        }
    }
    let used: BTreeSet<usize> = facets.iter().flatten().copied().collect();
    let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let labels = used.iter().map(|&v| vertices[v].clone()).collect();
    let facets = facets.into_iter().map(|f| f.into_iter().map(|v| index[&v]).collect()).collect();
    SimplicialComplex::new(labels, facets).expect("valid solid")
}

/// Default artificial length; the primal and dual defaults are 1.
pub const DEFAULT_ARTIFICIAL_LENGTH: f64 = 0.3;

/// Lengths and spring parameters for drawing solid 3-complexes with dual
/// nodes inside their tetrahedra.
pub fn solid_preset(seed: u64) -> (PdLengths, SpringParams) {
    (PdLengths { primal: 1.0, dual: 0.3, artificial: 0.3 }, SpringParams { delta_rep: 3.0, seed, ..SpringParams::default() })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PdLengths {
    pub primal: f64,
    pub dual: f64,
    pub artificial: f64,
}

impl Default for PdLengths {
    fn default() -> Self {
        PdLengths { primal: 1.0, dual: 1.0, artificial: DEFAULT_ARTIFICIAL_LENGTH }
    }
}

impl PdLengths {
    pub fn validate(&self) -> Result<()> {
        for (name, l) in [("primal", self.primal), ("dual", self.dual), ("artificial", self.artificial)] {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} length must be positive, got {l}")));
            }
        }
        Ok(())
    }

    pub fn of(&self, kind: EdgeKind) -> f64 {
        match kind {
            EdgeKind::Primal | EdgeKind::Generic => self.primal,
            EdgeKind::Dual => self.dual,
            EdgeKind::Artificial => self.artificial,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PdGraph {
    pub complex: SimplicialComplex,
    /// Nodes `0..f_0` are primal, node `f_0 + i` is facet `i`.
    pub graph: Graph,
    /// Kind of each edge of `graph`, by index.
    pub edge_kinds: Vec<EdgeKind>,
    /// Ridges with three or more cofacets; their cofacets form a dual clique.
    pub non_manifold_ridges: usize,
}

pub fn build_pd_graph(k: &SimplicialComplex) -> PdGraph {
    let mut graph = k.skeleton();
    let mut edge_kinds = vec![EdgeKind::Primal; graph.edge_count()];
    let f0 = graph.node_count();
    for f in &k.facets {
        let labels: Vec<&str> = f.iter().map(|&v| k.vertices[v].as_str()).collect();
        graph.add_node(Node { label: format!("{{{}}}", labels.join(" ")), kind: NodeKind::Dual });
    }
    let mut non_manifold_ridges = 0;
    for cofacets in k.ridges().values() {
        if cofacets.len() >= 3 {
            non_manifold_ridges += 1;
        }
        for (x, &a) in cofacets.iter().enumerate() {
            for &b in &cofacets[x + 1..] {
                if !graph.has_edge(f0 + a, f0 + b) {
                    graph.add_edge(f0 + a, f0 + b).expect("distinct facets");
                    edge_kinds.push(EdgeKind::Dual);
                }
            }
        }
    }
    for (i, f) in k.facets.iter().enumerate() {
        for &v in f {
            graph.add_edge(v, f0 + i).expect("primal and dual nodes differ");
            edge_kinds.push(EdgeKind::Artificial);
        }
    }
    PdGraph { complex: k.clone(), graph, edge_kinds, non_manifold_ridges }
}

impl PdGraph {
    pub fn primal_count(&self) -> usize {
        self.complex.vertices.len()
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edge_kinds.iter().filter(|&&k| k == kind).count()
    }

    /// Checks that edge kinds agree with the kinds of their end nodes.
    pub fn check_kinds(&self) -> Result<()> {
        for (e, &kind) in self.graph.edges().iter().zip(&self.edge_kinds) {
            let (a, b) = (self.graph.node(e.a).kind, self.graph.node(e.b).kind);
            let ok = match kind {
                EdgeKind::Primal => a == NodeKind::Primal && b == NodeKind::Primal,
                EdgeKind::Dual => a == NodeKind::Dual && b == NodeKind::Dual,
                EdgeKind::Artificial => a != b,
                EdgeKind::Generic => false,
            };
            if !ok {
                return Err(Error::Malformed(format!("{kind:?} edge {}-{}", e.a, e.b)));
            }
        }
        Ok(())
    }
}

/// Desired length of every edge by kind.
pub fn pd_lengths(pd: &PdGraph, lengths: &PdLengths) -> Result<Vec<f64>> {
    lengths.validate()?;
    Ok(pd.edge_kinds.iter().map(|&k| lengths.of(k)).collect())
}

/// Whether each dual node lies in the convex hull of its facet's primal
/// nodes, up to `tol` in barycentric coordinates. `None` for facets with
/// more vertices than the drawing dimension plus one.
pub fn dual_containment(pd: &PdGraph, positions: &[Vec<f64>], tol: f64) -> Vec<Option<bool>> {
    let f0 = pd.primal_count();
    pd.complex
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let x = &positions[f0 + i];
            let d = x.len();
            if f.len() > d + 1 {
                return None;
            }
            // Rows: coordinates, then the affine row of ones.
            let a = DMatrix::from_fn(d + 1, f.len(), |r, c| if r < d { positions[f[c]][r] } else { 1.0 });
            let b = DVector::from_fn(d + 1, |r, _| if r < d { x[r] } else { 1.0 });
            let svd = a.clone().svd(true, true);
            let lambda = svd.solve(&b, 1e-12).ok()?;
            let residual = (&a * &lambda - &b).norm();
            let scale = 1.0 + b.norm();
            Some(residual <= tol * scale && lambda.iter().all(|&l| l >= -tol))
        })
        .collect()
}

/// Fraction of decidable facets whose dual node lies inside the facet.
pub fn containment_fraction(pd: &PdGraph, positions: &[Vec<f64>]) -> Option<f64> {
    let c: Vec<bool> = dual_containment(pd, positions, 1e-9).into_iter().flatten().collect();
    (!c.is_empty()).then(|| c.iter().filter(|&&x| x).count() as f64 / c.len() as f64)
}

/// Spring drawing of the pd-graph in 3D. Desired lengths keep their ratios
/// and are scaled up to the stable step size of the embedder.
pub fn visualize_pd(pd: &PdGraph, lengths: &PdLengths, params: &SpringParams) -> Result<Scene> {
    let base = pd_lengths(pd, lengths)?;
    let scale = spring::stable_length_scale(&pd.graph, &base, params.delta_visc);
    let scaled: Vec<f64> = base.iter().map(|l| l * scale).collect();
    let run = spring::run(&pd.graph, params, None, Some(&scaled))?;
    let positions: Vec<Vec<f64>> = run.state.positions.iter().map(|p| p.to_vec()).collect();
    let meta = Metadata::new("pdgraph")
        .with_param("lengths", lengths)
        .with_param("length_scale", scale)
        .with_param("spring", params)
        .with_param("f_vector", pd.complex.f_vector())
        .with_param("non_manifold_ridges", pd.non_manifold_ridges)
        .with_param("converged", run.converged)
        .with_param("containment", containment_fraction(pd, &positions))
        .with_seed(params.seed);
    let mut scene = Scene::from_graph(&pd.graph, &positions, meta)?;
    for (e, &k) in scene.edges.iter_mut().zip(&pd.edge_kinds) {
        e.kind = k;
    }
    Ok(scene)
}
