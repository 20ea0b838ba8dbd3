use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use super::planar::PlanarEmbedding;
use crate::error::{Error, Result};
use crate::geom::{linalg, to_f64, Graph, Point, Rational};

/// Affine height function `h(x) = a·x + c` on one face.
#[derive(Clone, Debug, PartialEq)]
struct Plane {
    a: [Rational; 2],
    c: Rational,
}

impl Plane {
    fn zero() -> Self {
        Plane { a: [Rational::zero(), Rational::zero()], c: Rational::zero() }
    }

    fn eval(&self, x: &[Rational]) -> Rational {
        &self.a[0] * &x[0] + &self.a[1] * &x[1] + &self.c
    }
}

/// Net force `Σ_j ω_ij (p_j − p_i)` at every node.
pub fn stress_residuals(g: &Graph, positions: &[Point], stress: &[Rational]) -> Vec<[Rational; 2]> {
    let mut r = vec![[Rational::zero(), Rational::zero()]; g.node_count()];
    for (e, w) in g.edges().iter().zip(stress) {
        for k in 0..2 {
            let d = w * (&positions[e.b][k] - &positions[e.a][k]);
            r[e.a][k] += &d;
            r[e.b][k] -= d;
        }
    }
    r
}

fn max_residual(g: &Graph, positions: &[Point], stress: &[Rational]) -> Rational {
    stress_residuals(g, positions, stress)
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(Rational::zero(), |m, x| if x > m { x } else { m })
}

/// Equilibrium stress extending `inner_weights` on edges off the outer face
/// by stresses on the outer edges. Inner weights are assumed to balance at
/// inner nodes, as they do for a Tutte embedding with the same weights.
pub fn equilibrium_stress(g: &Graph, embedding: &PlanarEmbedding, inner_weights: &[Rational]) -> Result<Vec<Rational>> {
    if inner_weights.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), found: inner_weights.len() });
    }
    let outer = embedding.outer();
    let k = outer.len();
    let outer_edges: Vec<usize> = (0..k)
        .map(|i| g.edge_index(outer[i], outer[(i + 1) % k]).ok_or(Error::NotPlanar))
        .collect::<Result<_>>()?;
    let mut stress = inner_weights.to_vec();
    for &e in &outer_edges {
        stress[e] = Rational::zero();
    }
    let pos = &embedding.positions;
    let base = stress_residuals(g, pos, &stress);
    // Two equations per outer node, one unknown per outer edge.
    let mut rows = Vec::with_capacity(2 * k);
    let mut rhs = Vec::with_capacity(2 * k);
    for &v in &outer {
        for c in 0..2 {
            let row: Point = outer_edges
                .iter()
                .map(|&e| {
                    let ed = g.edges()[e];
                    if ed.a == v || ed.b == v {
                        &pos[ed.other(v)][c] - &pos[v][c]
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            rows.push(row);
            rhs.push(-base[v][c].clone());
        }
    }
    let x = linalg::solve_consistent(&rows, &rhs).ok_or_else(|| {
        Error::NotInEquilibrium(to_f64(&max_residual(g, pos, &stress)))
    })?;
    for (&e, w) in outer_edges.iter().zip(x) {
        stress[e] = w;
    }
    let r = max_residual(g, pos, &stress);
    if !r.is_zero() {
        return Err(Error::NotInEquilibrium(to_f64(&r)));
    }
    Ok(stress)
}

/// Heights of a Maxwell lift of an equilibrium stress, with the outer face
/// at height zero. Each face lifts to a plane; crossing the edge `i → j`
/// from its left face to its right face changes the height function by
/// `−ω_ij · det(p_j − p_i, x − p_i)`.
pub fn maxwell_lift(g: &Graph, embedding: &PlanarEmbedding, stress: &[Rational]) -> Result<Vec<Rational>> {
    if stress.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), found: stress.len() });
    }
    let pos = &embedding.positions;
    let r = max_residual(g, pos, stress);
    if !r.is_zero() {
        return Err(Error::NotInEquilibrium(to_f64(&r)));
    }
    let faces = &embedding.faces;
    let left = embedding.left_faces();
    let mut planes: Vec<Option<Plane>> = vec![None; faces.len()];
    planes[embedding.outer_face] = Some(Plane::zero());
    let mut queue = VecDeque::from([embedding.outer_face]);
    while let Some(f) = queue.pop_front() {
        let face = &faces[f];
        for k in 0..face.len() {
            // `f` lies to the left of `i → j`; the twin edge bounds the neighbour.
            let (i, j) = (face[k], face[(k + 1) % face.len()]);
            let w = &stress[g.edge_index(i, j).expect("face edge")];
            let hf = planes[f].clone().expect("visited face");
            let (dx, dy) = (&pos[j][0] - &pos[i][0], &pos[j][1] - &pos[i][1]);
            // det(d, x − p_i) = dx (y − y_i) − dy (x − x_i)
            let a = [&hf.a[0] + w * &dy, &hf.a[1] - w * &dx];
            let c = &hf.c - w * (&dy * &pos[i][0] - &dx * &pos[i][1]);
            let next = Plane { a, c };
            let h = left[&(j, i)];
            match &planes[h] {
                None => {
                    planes[h] = Some(next);
                    queue.push_back(h);
                }
                Some(p) if *p != next => return Err(Error::NotInEquilibrium(0.0)),
                Some(_) => {}
            }
        }
    }
    let mut heights: Vec<Option<Rational>> = vec![None; g.node_count()];
    for (face, plane) in faces.iter().zip(&planes) {
        let plane = plane.as_ref().ok_or(Error::Disconnected)?;
        for &v in face {
            let h = plane.eval(&pos[v]);
            match &heights[v] {
                None => heights[v] = Some(h),
                Some(x) if *x != h => return Err(Error::NotInEquilibrium(0.0)),
                Some(_) => {}
            }
        }
    }
    heights.into_iter().map(|h| h.ok_or(Error::Disconnected)).collect()
}

/// Fold sign of every edge off the outer face: the height of the right
/// face's plane minus the left face's plane, evaluated at a node of the
/// right face off the edge. All positive means the lift is strictly convex.
pub fn fold_signs(g: &Graph, embedding: &PlanarEmbedding, heights: &[Rational]) -> Vec<(usize, Rational)> {
    let left = embedding.left_faces();
    let pos = &embedding.positions;
    let lifted = |v: usize| [pos[v][0].clone(), pos[v][1].clone(), heights[v].clone()];
    let mut out = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        let (f, h) = (left[&(e.a, e.b)], left[&(e.b, e.a)]);
        if f == embedding.outer_face || h == embedding.outer_face {
            continue;
        }
        let x = *embedding.faces[h].iter().find(|&&v| v != e.a && v != e.b).expect("face with three nodes");
        let y = *embedding.faces[f].iter().find(|&&v| v != e.a && v != e.b).expect("face with three nodes");
        // Orientation of the lifted tetrahedron (a, b, y, x): positive iff x
        // lies above the plane through a, b, y.
        let (a, b, yy, xx) = (lifted(e.a), lifted(e.b), lifted(y), lifted(x));
        let u: Vec<Rational> = (0..3).map(|k| &b[k] - &a[k]).collect();
        let v: Vec<Rational> = (0..3).map(|k| &yy[k] - &a[k]).collect();
        let w: Vec<Rational> = (0..3).map(|k| &xx[k] - &a[k]).collect();
        let det = &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
            + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0]);
        // Normalise by the planar orientation of (a, b, y) so the sign does not
        // depend on which side of the edge `y` falls.
        let base = &u[0] * &v[1] - &u[1] * &v[0];
        let sign = if base.is_negative() { -det } else { det };
        out.push((ei, sign));
    }
    out
}

/// Whether every fold sign is strictly positive.
pub fn is_strictly_convex(g: &Graph, embedding: &PlanarEmbedding, heights: &[Rational]) -> bool {
    fold_signs(g, embedding, heights).iter().all(|(_, s)| s.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::int;
    use num_traits::One;

    #[test]
    fn single_triangle_is_flat() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let emb = PlanarEmbedding::from_drawing(&g, vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]])
            .unwrap();
        let stress = equilibrium_stress(&g, &emb, &[Rational::one(), Rational::one(), Rational::one()]).unwrap();
        assert!(stress.iter().all(Zero::is_zero));
        let h = maxwell_lift(&g, &emb, &stress).unwrap();
        assert!(h.iter().all(Zero::is_zero));
    }

    #[test]
    fn unbalanced_stress_is_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let p = vec![vec![int(0), int(0)], vec![int(3), int(0)], vec![int(0), int(3)], vec![int(1), int(1)]];
        let emb = PlanarEmbedding::from_drawing(&g, p).unwrap();
        let mut s = vec![Rational::one(); 6];
        s[3] = int(2);
        assert!(matches!(maxwell_lift(&g, &emb, &s), Err(Error::NotInEquilibrium(_))));
    }
}
