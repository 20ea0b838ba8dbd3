use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use super::tutte::tutte_embed_exact;
use crate::error::{Error, Result};
use crate::geom::{from_f64, int, is_connected, k_connected, to_f64, Graph, Point, Rational};

/// Straight-line plane embedding with its faces.
#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    pub positions: Vec<Point>,
    /// Neighbours of each node in counter-clockwise order.
    pub rotation: Vec<Vec<usize>>,
    /// Faces as node cycles; inner faces counter-clockwise, the outer face clockwise.
    pub faces: Vec<Vec<usize>>,
    pub outer_face: usize,
}

impl PlanarEmbedding {
    /// Faces of a straight-line drawing of a connected graph. The outer face
    /// is the unique face traced clockwise.
    pub fn from_drawing(g: &Graph, positions: Vec<Point>) -> Result<Self> {
        if !is_connected(g) {
            return Err(Error::Disconnected);
        }
        if positions.len() != g.node_count() {
            return Err(Error::DimensionMismatch { expected: g.node_count(), found: positions.len() });
        }
        if let Some(p) = positions.iter().find(|p| p.len() != 2) {
            return Err(Error::DimensionMismatch { expected: 2, found: p.len() });
        }
        let (rotation, faces) = faces_of_drawing(g, &positions)?;
        if g.node_count() as i64 - g.edge_count() as i64 + faces.len() as i64 != 2 {
            return Err(Error::NotPlanar);
        }
        let clockwise: Vec<usize> =
            (0..faces.len()).filter(|&i| !signed_area2(&faces[i], &positions).is_positive()).collect();
        if clockwise.len() != 1 || crossing_pairs(g, &positions) > 0 {
            return Err(Error::NotPlanar);
        }
        Ok(PlanarEmbedding { positions, rotation, faces, outer_face: clockwise[0] })
    }

    pub fn positions_f64(&self) -> Vec<Vec<f64>> {
        self.positions.iter().map(|p| p.iter().map(to_f64).collect()).collect()
    }

    /// The outer cycle in counter-clockwise order.
    pub fn outer(&self) -> Vec<usize> {
        let mut c = self.faces[self.outer_face].clone();
        c.reverse();
        c
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.faces.iter().enumerate().filter(move |&(i, _)| i != self.outer_face).map(|(_, f)| f)
    }

    /// Face to the left of each directed edge.
    pub fn left_faces(&self) -> HashMap<(usize, usize), usize> {
        let mut m = HashMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            for k in 0..f.len() {
                m.insert((f[k], f[(k + 1) % f.len()]), i);
            }
        }
        m
    }

    /// Graph on the faces; two faces are adjacent when they share an edge.
    pub fn dual_graph(&self, g: &Graph) -> Graph {
        let left = self.left_faces();
        let mut d = Graph::new(self.faces.len());
        for e in g.edges() {
            let (f, h) = (left[&(e.a, e.b)], left[&(e.b, e.a)]);
            if f != h && !d.has_edge(f, h) {
                d.add_edge(f, h).expect("distinct faces");
            }
        }
        d
    }
}

fn cross(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub(crate) fn orientation(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    let u = [&b[0] - &a[0], &b[1] - &a[1]];
    let v = [&c[0] - &a[0], &c[1] - &a[1]];
    cross(&u, &v)
}

/// Counter-clockwise angular order starting from the positive x-axis.
fn angle_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    let half = |d: &[Rational]| if d[1].is_positive() || (d[1].is_zero() && d[0].is_positive()) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Traces the faces of a straight-line drawing. Fails if two edges at a
/// node overlap or two nodes coincide.
fn faces_of_drawing(g: &Graph, positions: &[Point]) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let mut rotation = Vec::with_capacity(g.node_count());
    for v in 0..g.node_count() {
        let dirs: Vec<(usize, Point)> = g
            .neighbors(v)
            .iter()
            .map(|&w| (w, vec![&positions[w][0] - &positions[v][0], &positions[w][1] - &positions[v][1]]))
            .collect();
        if dirs.iter().any(|(_, d)| d.iter().all(Zero::is_zero)) {
            return Err(Error::NotPlanar);
        }
        let mut order: Vec<usize> = (0..dirs.len()).collect();
        order.sort_by(|&i, &j| angle_cmp(&dirs[i].1, &dirs[j].1));
        if order.windows(2).any(|w| angle_cmp(&dirs[w[0]].1, &dirs[w[1]].1) == Ordering::Equal) {
            return Err(Error::NotPlanar);
        }
        rotation.push(order.into_iter().map(|i| dirs[i].0).collect::<Vec<_>>());
    }
    let slot: HashMap<(usize, usize), usize> = rotation
        .iter()
        .enumerate()
        .flat_map(|(v, r)| r.iter().enumerate().map(move |(i, &w)| ((v, w), i)))
        .collect();
    let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
    let mut faces = Vec::new();
    for e in g.edges() {
        for start in [(e.a, e.b), (e.b, e.a)] {
            if seen.contains_key(&start) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = start;
            loop {
                seen.insert((a, b), true);
                face.push(a);
                let r = &rotation[b];
                let c = r[(slot[&(b, a)] + r.len() - 1) % r.len()];
                (a, b) = (b, c);
                if (a, b) == start {
                    break;
                }
            }
            faces.push(face);
        }
    }
    Ok((rotation, faces))
}

fn signed_area2(cycle: &[usize], positions: &[Point]) -> Rational {
    (0..cycle.len())
        .map(|i| cross(&positions[cycle[i]], &positions[cycle[(i + 1) % cycle.len()]]))
        .fold(Rational::zero(), |a, b| a + b)
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

/// Whether `cycle` is an induced cycle of `g` whose removal leaves `g` connected.
pub fn is_peripheral(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    let rest: Vec<usize> = (0..g.node_count()).filter(|v| !cycle.contains(v)).collect();
    is_connected(&g.induced(&rest))
}

/// Shortest induced non-separating cycle of length at most `max_len`.
pub fn peripheral_cycle(g: &Graph, max_len: usize) -> Option<Vec<usize>> {
    for len in 3..=max_len.min(g.node_count()) {
        let mut path = Vec::with_capacity(len);
        for s in 0..g.node_count() {
            path.push(s);
            if let Some(c) = extend_cycle(g, &mut path, len) {
                return Some(c);
            }
            path.pop();
        }
    }
    None
}

fn extend_cycle(g: &Graph, path: &mut Vec<usize>, len: usize) -> Option<Vec<usize>> {
    let last = *path.last().expect("nonempty path");
    if path.len() == len {
        return (g.has_edge(last, path[0]) && is_peripheral(g, path)).then(|| path.clone());
    }
    for &w in g.neighbors(last) {
        // Smallest node first, and the second node smaller than the last, so
        // each cycle is visited once per direction class.
        if w <= path[0] || path.contains(&w) {
            continue;
        }
        if path.len() + 1 == len && w < path[1] {
            continue;
        }
        path.push(w);
        if let Some(c) = extend_cycle(g, path, len) {
            return Some(c);
        }
        path.pop();
    }
    None
}

/// `k` rational points on the unit circle in counter-clockwise order.
pub fn convex_polygon(k: usize) -> Vec<Point> {
    (0..k)
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / k as f64;
            if 2 * i == k {
                return vec![-Rational::one(), Rational::zero()];
            }
            // Rational parametrisation of the circle at t ≈ tan(θ/2).
            let t = from_f64(((theta / 2.0).tan() * 1024.0).round()).expect("finite") / int(1024);
            let q = Rational::one() + &t * &t;
            vec![(Rational::one() - &t * &t) / &q, (int(2) * &t) / &q]
        })
        .collect()
}

fn check_hypotheses(g: &Graph) -> Result<()> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if g.node_count() < 4 || !k_connected(g, 3)? {
        return Err(Error::NotThreeConnected);
    }
    Ok(())
}

/// Tutte embedding of a planar 3-connected graph with `outer` pinned to the
/// strictly convex polygon `outer_positions`.
pub fn planar_tutte(g: &Graph, outer: &[usize], outer_positions: &[Point]) -> Result<PlanarEmbedding> {
    planar_tutte_weighted(g, outer, outer_positions, &vec![Rational::one(); g.edge_count()])
}

pub fn planar_tutte_weighted(
    g: &Graph,
    outer: &[usize],
    outer_positions: &[Point],
    weights: &[Rational],
) -> Result<PlanarEmbedding> {
    check_hypotheses(g)?;
    if outer.len() != outer_positions.len() {
        return Err(Error::DimensionMismatch { expected: outer.len(), found: outer_positions.len() });
    }
    if let Some(&v) = outer.iter().find(|&&v| v >= g.node_count()) {
        return Err(Error::UnknownNode(v));
    }
    if outer_positions.iter().any(|p| p.len() != 2) {
        return Err(Error::InvalidParameter("outer positions must be 2-dimensional".into()));
    }
    let k = outer.len();
    let convex = (0..k).all(|i| {
        orientation(&outer_positions[i], &outer_positions[(i + 1) % k], &outer_positions[(i + 2) % k]).is_positive()
    }) && signed_area2(&(0..k).collect::<Vec<_>>(), outer_positions).is_positive();
    if !convex {
        return Err(Error::InvalidParameter("outer positions must form a strictly convex counter-clockwise polygon".into()));
    }
    if !is_peripheral(g, outer) {
        return Err(Error::InvalidParameter("outer cycle is not an induced non-separating cycle".into()));
    }
    let fixed: BTreeMap<usize, Point> = outer.iter().copied().zip(outer_positions.iter().cloned()).collect();
    let positions = tutte_embed_exact(g, &fixed, weights)?;
    let (rotation, faces) = faces_of_drawing(g, &positions)?;
    let euler = g.node_count() as i64 - g.edge_count() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(Error::NotPlanar);
    }
    let mut cw = outer.to_vec();
    cw.reverse();
    let outer_face = faces.iter().position(|f| same_cycle(f, &cw)).ok_or(Error::NotPlanar)?;
    if faces
        .iter()
        .enumerate()
        .any(|(i, f)| i != outer_face && !signed_area2(f, &positions).is_positive())
    {
        return Err(Error::NotPlanar);
    }
    Ok(PlanarEmbedding { positions, rotation, faces, outer_face })
}

/// Tutte embedding on a shortest peripheral cycle placed on a rational
/// polygon inscribed in the unit circle.
pub fn planar_embedding(g: &Graph) -> Result<PlanarEmbedding> {
    check_hypotheses(g)?;
    // Every planar 3-connected graph has a face with at most five nodes, and
    // its faces are exactly its peripheral cycles.
    let outer = peripheral_cycle(g, 5).ok_or(Error::NotPlanar)?;
    planar_tutte(g, &outer, &convex_polygon(outer.len()))
}

/// Whether two closed segments share a point other than a common endpoint.
pub fn segments_cross(a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> bool {
    let sgn = |x: Rational| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 };
    let (o1, o2) = (sgn(orientation(a, b, c)), sgn(orientation(a, b, d)));
    let (o3, o4) = (sgn(orientation(c, d, a)), sgn(orientation(c, d, b)));
    let shares = a == c || a == d || b == c || b == d;
    if o1 == 0 && o2 == 0 {
        // Collinear: overlap of positive length, or touching without sharing an endpoint.
        let key = |p: &[Rational]| (p[0].clone(), p[1].clone());
        let (mut s, mut t) = ((key(a), key(b)), (key(c), key(d)));
        if s.0 > s.1 {
            s = (s.1, s.0);
        }
        if t.0 > t.1 {
            t = (t.1, t.0);
        }
        let lo = if s.0 > t.0 { s.0.clone() } else { t.0.clone() };
        let hi = if s.1 < t.1 { s.1.clone() } else { t.1.clone() };
        return lo < hi || (lo == hi && !shares);
    }
    if shares {
        return false;
    }
    o1 * o2 <= 0 && o3 * o4 <= 0
}

/// Number of pairs of edges whose drawings cross.
pub fn crossing_pairs(g: &Graph, positions: &[Point]) -> usize {
    let edges = g.edges();
    let mut count = 0;
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if segments_cross(&positions[e.a], &positions[e.b], &positions[f.a], &positions[f.b]) {
                count += 1;
            }
        }
    }
    count
}
