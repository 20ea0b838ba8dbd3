use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dd;
use super::lattice::{self, Face};
use super::rational::{dot, primitive_integer_vector, Halfspace, Point, Rational};
use crate::error::{Error, Result};

/// Pointed polyhedron with both descriptions: the defining inequalities and
/// the enumerated vertices and extreme rays.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    dim: usize,
    inequalities: Vec<Halfspace>,
    vertices: Vec<Point>,
    rays: Vec<Point>,
    /// Per inequality, the tight generators: vertices first, then rays.
    incidence: Vec<FixedBitSet>,
}

impl Polyhedron {
    /// Builds from already enumerated generators. Vertices and rays are sorted
    /// so that both enumeration routes produce identical values.
    pub(crate) fn from_parts(inequalities: Vec<Halfspace>, mut vertices: Vec<Point>, mut rays: Vec<Point>) -> Self {
        vertices.sort();
        rays.sort();
        let dim = inequalities[0].normal.len();
        let n = vertices.len() + rays.len();
        let incidence = inequalities
            .iter()
            .map(|h| {
                let mut set = FixedBitSet::with_capacity(n);
                for (k, v) in vertices.iter().enumerate() {
                    if h.slack(v).is_zero() {
                        set.insert(k);
                    }
                }
                for (k, r) in rays.iter().enumerate() {
                    if dot(&h.normal, r).is_zero() {
                        set.insert(vertices.len() + k);
                    }
                }
                set
            })
            .collect();
        Polyhedron { dim, inequalities, vertices, rays, incidence }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Point] {
        &self.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Tight generator set of each inequality (vertex indices, then
    /// `vertices().len() + ray index`).
    pub fn incidence(&self) -> &[FixedBitSet] {
        &self.incidence
    }

    /// All faces without rays, i.e. the bounded subcomplex, excluding the
    /// empty face. Sorted by dimension, then by vertex set.
    pub fn bounded_faces(&self) -> Vec<Face> {
        let nv = self.vertices.len();
        lattice::faces_bottom_up(&self.incidence, nv, self.rays.len(), |set| {
            set.ones().all(|g| g < nv)
        })
        .into_iter()
        .filter(|f| f.dim >= 0)
        .collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|h| h.contains(x))
    }
}

/// Vertices and extreme rays of `{x : a·x <= b}` by the double description
/// method on the homogenized cone.
pub fn vertex_enumeration(inequalities: &[Halfspace]) -> Result<Polyhedron> {
    let d = inequalities.first().ok_or(Error::EmptyInput)?.normal.len();
    if let Some(bad) = inequalities.iter().find(|h| h.normal.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.normal.len() });
    }
    // (t, x) with t >= 0 and b t - a x >= 0.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(inequalities.len() + 1);
    let mut t_row = vec![BigInt::zero(); d + 1];
    t_row[0] = BigInt::from(1);
    rows.push(t_row);
    for h in inequalities {
        let mut row: Vec<Rational> = Vec::with_capacity(d + 1);
        row.push(h.offset.clone());
        row.extend(h.normal.iter().map(|a| -a));
        rows.push(primitive_integer_vector(&row));
    }
    let rays = dd::extreme_rays(&rows, d + 1)?;
    let mut vertices = Vec::new();
    let mut directions = Vec::new();
    for r in rays {
        let t = r[0].clone();
        if t.is_positive() {
            let t = Rational::from_integer(t);
            vertices.push(r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect::<Point>());
        } else {
            directions.push(r[1..].iter().cloned().map(Rational::from_integer).collect::<Point>());
        }
    }
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    Ok(Polyhedron::from_parts(inequalities.to_vec(), vertices, directions))
}
