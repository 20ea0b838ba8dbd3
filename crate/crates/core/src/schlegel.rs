//! Schlegel diagrams and interactive viewpoint steering.
//!
//! All points handled here (anchor `w`, ray `r`, viewpoint `v`, projected
//! positions) are in the intrinsic coordinates of the polytope, i.e. its
//! [`AffineChart`](crate::geom::AffineChart) coordinates. For a
//! full-dimensional polytope these are the ambient coordinates.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{add, barycenter, dot, int, scale, sub, to_f64, Face, Halfspace, Point, Polytope, Rational};

/// Resolution of the bisection used to clamp facet-vertex drags.
const DRAG_BISECTION_STEPS: u32 = 20;

/// Polytope in intrinsic coordinates with the facet hyperplane of interest.
#[derive(Clone, Debug)]
struct Frame {
    vertices: Vec<Point>,
    facets: Vec<Halfspace>,
}

impl Frame {
    fn of(p: &Polytope) -> Self {
        Frame { vertices: p.chart_vertices(), facets: p.chart_facets() }
    }
}

fn check_facet(p: &Polytope, facet: usize) -> Result<()> {
    if facet >= p.facets().len() || p.dim() < 1 {
        return Err(Error::NotAFacet(facet));
    }
    Ok(())
}

/// The beyond condition: strictly violates `facet`, strictly satisfies all others.
pub fn validate_viewpoint(p: &Polytope, facet: usize, v: &[Rational]) -> bool {
    if facet >= p.facets().len() || v.len() != p.dim() {
        return false;
    }
    p.chart_facets()
        .iter()
        .enumerate()
        .all(|(i, h)| if i == facet { h.slack(v).is_negative() } else { h.slack(v).is_positive() })
}

/// Largest `λ` with `w + ζλr` beyond `facet` for all `ζ ∈ (0,1)`, or `None`
/// if the region beyond is unbounded along the ray.
pub fn lambda_max(p: &Polytope, facet: usize, w: &[Rational], r: &[Rational]) -> Option<Rational> {
    p.chart_facets()
        .iter()
        .enumerate()
        .filter(|&(i, h)| i != facet && dot(&h.normal, r).is_positive())
        .map(|(_, h)| h.slack(w) / dot(&h.normal, r))
        .min()
}

/// Either a finite `λ_max` or an unbounded beyond-ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extent {
    Bounded(Rational),
    Unbounded,
}

impl Extent {
    pub fn as_option(&self) -> Option<&Rational> {
        match self {
            Extent::Bounded(l) => Some(l),
            Extent::Unbounded => None,
        }
    }
}

/// Viewpoint data for a Schlegel diagram of `polytope` on `facet`.
#[derive(Clone, Debug)]
pub struct SchlegelState {
    polytope: Arc<Polytope>,
    facet: usize,
    w: Point,
    r: Point,
    zeta: Rational,
    extent: Extent,
    v: Point,
}

fn viewpoint(w: &[Rational], r: &[Rational], zeta: &Rational, extent: &Extent) -> Point {
    let t = match extent {
        Extent::Bounded(l) => zeta * l,
        Extent::Unbounded => zeta / (Rational::one() - zeta),
    };
    add(w, &scale(r, &t))
}

fn check_zoom(zeta: &Rational) -> Result<()> {
    if !zeta.is_positive() || *zeta >= Rational::one() {
        return Err(Error::InvalidParameter(format!("zoom must lie in (0,1), got {zeta}")));
    }
    Ok(())
}

/// Initial state on `facet` with zoom `1/2`.
pub fn init_state(p: impl Into<Arc<Polytope>>, facet: usize) -> Result<SchlegelState> {
    init_state_with_zoom(p, facet, Rational::new(1.into(), 2.into()))
}

pub fn init_state_with_zoom(p: impl Into<Arc<Polytope>>, facet: usize, zeta: Rational) -> Result<SchlegelState> {
    let polytope = p.into();
    check_facet(&polytope, facet)?;
    check_zoom(&zeta)?;
    let frame = Frame::of(&polytope);
    let fverts: Vec<&Point> = polytope.facet_vertices(facet).into_iter().map(|i| &frame.vertices[i]).collect();
    let w = barycenter(&fverts);
    let r = frame.facets[facet].normal.clone();
    let extent = match lambda_max(&polytope, facet, &w, &r) {
        Some(l) => Extent::Bounded(l),
        None => Extent::Unbounded,
    };
    let v = viewpoint(&w, &r, &zeta, &extent);
    Ok(SchlegelState { polytope, facet, w, r, zeta, extent, v })
}

impl SchlegelState {
    pub fn polytope(&self) -> &Arc<Polytope> {
        &self.polytope
    }

    pub fn facet(&self) -> usize {
        self.facet
    }

    /// The facet inequality `a·x ≤ b` in intrinsic coordinates.
    pub fn hyperplane(&self) -> Halfspace {
        self.polytope.chart_facets().swap_remove(self.facet)
    }

    pub fn anchor(&self) -> &Point {
        &self.w
    }

    pub fn ray(&self) -> &Point {
        &self.r
    }

    pub fn zoom(&self) -> &Rational {
        &self.zeta
    }

    pub fn extent(&self) -> &Extent {
        &self.extent
    }

    pub fn viewpoint(&self) -> &Point {
        &self.v
    }

    pub fn is_valid(&self) -> bool {
        validate_viewpoint(&self.polytope, self.facet, &self.v)
    }

    pub fn diagram(&self) -> Result<SchlegelDiagram> {
        project(&self.polytope, self.facet, &self.v)
    }

    /// State with the same anchor and ray and a new zoom value.
    pub fn set_zoom(&self, zeta: Rational) -> Result<SchlegelState> {
        check_zoom(&zeta)?;
        let v = viewpoint(&self.w, &self.r, &zeta, &self.extent);
        Ok(SchlegelState { v, zeta, ..self.clone() })
    }

    /// Moves the anchor by `-d` and the viewpoint by `+d`. If the full
    /// displacement would leave the beyond region or move the anchor out of
    /// the relative interior of the facet, the largest admissible fraction
    /// `k/2^20` of `d` is used.
    pub fn drag_facet_vertex(&self, vertex: usize, d: &[Rational]) -> Result<SchlegelState> {
        if !self.polytope.incidence()[self.facet].contains(vertex) {
            return Err(Error::InvalidParameter(format!("vertex {vertex} is not on the projection facet")));
        }
        if d.len() != self.polytope.dim() {
            return Err(Error::DimensionMismatch { expected: self.polytope.dim(), found: d.len() });
        }
        let h = self.hyperplane();
        if !dot(&h.normal, d).is_zero() {
            return Err(Error::NotParallel);
        }
        if d.iter().all(Zero::is_zero) {
            return Ok(self.clone());
        }
        let facets = self.polytope.chart_facets();
        let admissible = |s: &Rational| {
            let step = scale(d, s);
            let w = sub(&self.w, &step);
            let v = add(&self.v, &step);
            let interior = facets.iter().enumerate().all(|(i, g)| i == self.facet || g.slack(&w).is_positive());
            interior && validate_viewpoint(&self.polytope, self.facet, &v)
        };
        let mut s = Rational::one();
        if !admissible(&s) {
            let denom = 1i64 << DRAG_BISECTION_STEPS;
            let (mut lo, mut hi) = (0i64, denom);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if admissible(&Rational::new(mid.into(), denom.into())) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            s = Rational::new(lo.into(), denom.into());
        }
        let step = scale(d, &s);
        Ok(self.reanchor(sub(&self.w, &step), add(&self.v, &step)))
    }

    /// Moves the viewpoint parallel to the facet so that vertex `x` projects
    /// to `target`, a point in the affine hull of the facet.
    pub fn drag_nonfacet_vertex(&self, x: usize, target: &[Rational]) -> Result<SchlegelState> {
        let n = self.polytope.vertices().len();
        if x >= n {
            return Err(Error::InvalidParameter(format!("no vertex {x}")));
        }
        if self.polytope.incidence()[self.facet].contains(x) {
            return Err(Error::VertexOnFacet(x));
        }
        if target.len() != self.polytope.dim() {
            return Err(Error::DimensionMismatch { expected: self.polytope.dim(), found: target.len() });
        }
        let h = self.hyperplane();
        if !h.slack(target).is_zero() {
            return Err(Error::InvalidParameter("target is not in the affine hull of the facet".into()));
        }
        let xp = self.polytope.chart().project(&self.polytope.vertices()[x]);
        let ax = dot(&h.normal, &xp);
        let denom = dot(&h.normal, target) - &ax;
        if denom.is_zero() {
            return Err(Error::ParallelLine);
        }
        let t = (dot(&h.normal, &self.v) - &ax) / denom;
        let v = add(&xp, &scale(&sub(target, &xp), &t));
        if !validate_viewpoint(&self.polytope, self.facet, &v) {
            return Err(Error::InvalidViewpoint);
        }
        Ok(self.reanchor(self.w.clone(), v))
    }

    /// Rebuilds `(r, ζ, λ_max)` for a new anchor and viewpoint. In the
    /// bounded case the zoom is read off the geometry; in the unbounded case
    /// the zoom is kept and the ray rescaled.
    fn reanchor(&self, w: Point, v: Point) -> SchlegelState {
        let dir = sub(&v, &w);
        match lambda_max(&self.polytope, self.facet, &w, &dir) {
            Some(l) => {
                let zeta = Rational::one() / &l;
                SchlegelState { w, r: dir, zeta, extent: Extent::Bounded(l), v, ..self.clone() }
            }
            None => {
                let k = (Rational::one() - &self.zeta) / &self.zeta;
                SchlegelState { w, r: scale(&dir, &k), extent: Extent::Unbounded, v, ..self.clone() }
            }
        }
    }
}

/// The unique facet containing all `marked` vertices.
pub fn select_facet(p: &Polytope, marked: &[usize]) -> Result<usize> {
    if marked.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(&m) = marked.iter().find(|&&m| m >= p.vertices().len()) {
        return Err(Error::InvalidParameter(format!("no vertex {m}")));
    }
    let hits: Vec<usize> = (0..p.facets().len())
        .filter(|&f| marked.iter().all(|&m| p.incidence()[f].contains(m)))
        .collect();
    match hits.len() {
        0 => Err(Error::NoSuchFacet),
        1 => Ok(hits[0]),
        count => Err(Error::AmbiguousFacet { count }),
    }
}

/// Orthogonal (unnormalized) basis of the facet hyperplane with an origin.
#[derive(Clone, Debug)]
pub struct FacetBasis {
    origin: Point,
    basis: Vec<Point>,
    norms: Vec<Rational>,
}

impl FacetBasis {
    fn new(normal: &[Rational], origin: Point) -> Self {
        let d = normal.len();
        let mut basis: Vec<Point> = Vec::new();
        let mut norms: Vec<Rational> = Vec::new();
        let nn = dot(normal, normal);
        for j in 0..d {
            if basis.len() + 1 == d {
                break;
            }
            let mut u = vec![Rational::zero(); d];
            u[j] = Rational::one();
            u = sub(&u, &scale(normal, &(&normal[j] / &nn)));
            for (b, n) in basis.iter().zip(&norms) {
                let c = dot(&u, b) / n;
                u = sub(&u, &scale(b, &c));
            }
            let n = dot(&u, &u);
            if !n.is_zero() {
                basis.push(u);
                norms.push(n);
            }
        }
        FacetBasis { origin, basis, norms }
    }

    /// Coefficients of `x − origin` in the basis (exact, affine coordinates).
    pub fn coefficients(&self, x: &[Rational]) -> Point {
        let y = sub(x, &self.origin);
        self.basis.iter().zip(&self.norms).map(|(u, n)| dot(&y, u) / n).collect()
    }

    /// Orthonormal coordinates as floats.
    pub fn coordinates(&self, x: &[Rational]) -> Vec<f64> {
        self.coefficients(x)
            .iter()
            .zip(&self.norms)
            .map(|(c, n)| to_f64(c) * to_f64(n).sqrt())
            .collect()
    }

    /// Inverse of [`FacetBasis::coefficients`].
    pub fn lift(&self, c: &[Rational]) -> Point {
        self.basis.iter().zip(c).fold(self.origin.clone(), |acc, (u, ci)| add(&acc, &scale(u, ci)))
    }

    /// Point of the hyperplane with the given orthonormal float coordinates,
    /// rounded to a nearby rational.
    pub fn lift_coordinates(&self, x: &[f64]) -> Result<Point> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        let c = x
            .iter()
            .zip(&self.norms)
            .map(|(xi, n)| {
                crate::geom::from_f64(xi / to_f64(n).sqrt())
                    .ok_or_else(|| Error::InvalidParameter(format!("non-finite coordinate {xi}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.lift(&c))
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn vectors(&self) -> &[Point] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Images of all vertices and the cells of a Schlegel diagram.
#[derive(Clone, Debug)]
pub struct SchlegelDiagram {
    pub facet: usize,
    /// `π(x)` for each vertex, in intrinsic coordinates of the polytope.
    pub positions: Vec<Point>,
    /// Exact affine coordinates of `π(x)` in the facet hyperplane.
    pub exact: Vec<Point>,
    /// Orthonormal float coordinates of `π(x)` in the facet hyperplane.
    pub coords: Vec<Vec<f64>>,
    /// All proper nonempty faces except the facet itself.
    pub cells: Vec<Face>,
    pub basis: FacetBasis,
}

impl SchlegelDiagram {
    /// Cells of top dimension, one per facet other than the projection facet.
    pub fn top_cells(&self) -> impl Iterator<Item = &Face> + '_ {
        let top = self.basis.dim() as isize;
        self.cells.iter().filter(move |c| c.dim == top)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter().filter(|c| c.dim == 1).map(|c| (c.vertices[0], c.vertices[1]))
    }
}

/// Projects every vertex from `v` onto `facet`.
pub fn project(p: &Polytope, facet: usize, v: &[Rational]) -> Result<SchlegelDiagram> {
    check_facet(p, facet)?;
    if !validate_viewpoint(p, facet, v) {
        return Err(Error::InvalidViewpoint);
    }
    let frame = Frame::of(p);
    let h = &frame.facets[facet];
    let av = dot(&h.normal, v);
    let num = &h.offset - &av;
    let positions: Vec<Point> = frame
        .vertices
        .iter()
        .map(|x| {
            let t = &num / (dot(&h.normal, x) - &av);
            add(v, &scale(&sub(x, v), &t))
        })
        .collect();
    let fverts = p.facet_vertices(facet);
    let origin = fverts.first().map(|&i| frame.vertices[i].clone()).unwrap_or_else(|| vec![int(0); p.dim()]);
    let basis = FacetBasis::new(&h.normal, origin);
    let exact: Vec<Point> = positions.iter().map(|x| basis.coefficients(x)).collect();
    let coords = positions.iter().map(|x| basis.coordinates(x)).collect();
    let top = p.dim() as isize;
    let cells = p
        .face_lattice()
        .faces()
        .iter()
        .filter(|f| f.dim >= 0 && f.dim < top && f.vertices != fverts)
        .cloned()
        .collect();
    Ok(SchlegelDiagram { facet, positions, exact, coords, cells, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::construct::{cube, simplex};
    use crate::geom::{convex_hull, ratio};

    fn square() -> Polytope {
        cube(2).unwrap()
    }

    fn facet_with(p: &Polytope, normal: &[i64], offset: i64) -> usize {
        let h = Halfspace::new(normal.iter().map(|&a| int(a)).collect(), int(offset));
        p.facets().iter().position(|f| *f == h).unwrap()
    }

    #[test]
    fn square_is_unbounded() {
        let p = square();
        let f = facet_with(&p, &[1, 0], 1);
        let s = init_state(p, f).unwrap();
        assert_eq!(s.anchor(), &vec![int(1), ratio(1, 2)]);
        assert_eq!(s.ray(), &vec![int(1), int(0)]);
        assert_eq!(s.extent(), &Extent::Unbounded);
        assert_eq!(s.viewpoint(), &vec![int(2), ratio(1, 2)]);
    }

    #[test]
    fn square_projection() {
        let p = square();
        let f = facet_with(&p, &[1, 0], 1);
        let d = project(&p, f, &[int(2), ratio(1, 2)]).unwrap();
        let origin = p.vertex_index(&[int(0), int(0)]).unwrap();
        assert_eq!(d.positions[origin], vec![int(1), ratio(1, 4)]);
    }

    #[test]
    fn simplex_facets_are_unbounded_along_the_normal() {
        let p = simplex(3).unwrap();
        for f in 0..4 {
            let s = init_state(p.clone(), f).unwrap();
            assert_eq!(s.extent(), &Extent::Unbounded);
            assert!(s.is_valid());
        }
    }

    #[test]
    fn octahedron_is_bounded() {
        let p = crate::geom::construct::cross_polytope(3).unwrap();
        for f in 0..8 {
            let s = init_state(p.clone(), f).unwrap();
            let l = s.extent().as_option().unwrap();
            assert!(l.is_positive());
            assert!(s.is_valid());
            let half = add(s.anchor(), &scale(s.ray(), &(l / int(2))));
            assert!(validate_viewpoint(&p, f, &half));
            assert!(!validate_viewpoint(&p, f, &add(s.anchor(), &scale(s.ray(), l))));
        }
    }

    #[test]
    fn skewed_simplex_is_bounded() {
        // Obtuse at (1,0): the normal ray leaves the cone at the apex (5,1).
        let p = convex_hull(&[vec![int(0), int(0)], vec![int(1), int(0)], vec![int(5), int(1)]]).unwrap();
        let f = facet_with(&p, &[0, -1], 0);
        let s = init_state(p, f).unwrap();
        assert_eq!(s.extent(), &Extent::Bounded(ratio(1, 8)));
    }

    #[test]
    fn zoom_edges() {
        let p = square();
        let f = facet_with(&p, &[1, 0], 1);
        let s = init_state(p, f).unwrap();
        assert!(s.set_zoom(int(0)).is_err());
        assert!(s.set_zoom(int(1)).is_err());
        let tiny = s.set_zoom(ratio(1, 1_000_000)).unwrap();
        assert!(tiny.is_valid());
        assert!(!validate_viewpoint(s.polytope(), f, s.anchor()));
    }

    #[test]
    fn select_facet_errors() {
        let c = cube(3).unwrap();
        let f0 = c.facet_vertices(0);
        assert_eq!(select_facet(&c, &f0).unwrap(), 0);
        assert_eq!(select_facet(&c, &f0[..2]).map_err(|e| e.code()), Err("ambiguous"));
        let t = simplex(3).unwrap();
        assert_eq!(select_facet(&t, &[0]), Err(Error::AmbiguousFacet { count: 3 }));
    }

    #[test]
    fn basis_is_orthogonal() {
        let p = convex_hull(&[
            vec![int(0), int(0), int(0)],
            vec![int(2), int(0), int(0)],
            vec![int(0), int(3), int(0)],
            vec![int(0), int(0), int(5)],
        ])
        .unwrap();
        let f = p.facets().iter().position(|h| h.offset.is_positive()).unwrap();
        let s = init_state(p, f).unwrap();
        let d = s.diagram().unwrap();
        assert_eq!(d.basis.dim(), 2);
        assert!(dot(&d.basis.basis[0], &d.basis.basis[1]).is_zero());
        for u in &d.basis.basis {
            assert!(dot(u, &s.hyperplane().normal).is_zero());
        }
    }
}
