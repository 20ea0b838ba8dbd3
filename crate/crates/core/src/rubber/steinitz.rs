use num_traits::One;

use super::lift::{equilibrium_stress, is_strictly_convex, maxwell_lift};
use super::planar::{convex_polygon, peripheral_cycle, planar_embedding, planar_tutte, PlanarEmbedding};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, k_connected, Graph, Point, Polytope, Rational};

/// A planar drawing together with the polytope obtained by lifting it.
#[derive(Clone, Debug)]
pub struct LiftedRealization {
    pub embedding: PlanarEmbedding,
    /// Equilibrium stress in edge order.
    pub stress: Vec<Rational>,
    pub heights: Vec<Rational>,
    /// Hull of the lifted nodes.
    pub polytope: Polytope,
}

impl LiftedRealization {
    pub fn lifted_points(&self) -> Vec<Point> {
        self.embedding
            .positions
            .iter()
            .zip(&self.heights)
            .map(|(p, h)| vec![p[0].clone(), p[1].clone(), h.clone()])
            .collect()
    }
}

/// Tutte drawing of `g` with the triangle `outer` pinned, lifted to a
/// 3-polytope. `g` must be planar and 3-connected and `outer` one of its
/// triangular faces.
pub fn lift_realization(g: &Graph, outer: &[usize]) -> Result<LiftedRealization> {
    if outer.len() != 3 {
        return Err(Error::InvalidParameter("outer face must be a triangle".into()));
    }
    let embedding = planar_tutte(g, outer, &convex_polygon(3))?;
    let weights = vec![Rational::one(); g.edge_count()];
    let stress = equilibrium_stress(g, &embedding, &weights)?;
    let heights = maxwell_lift(g, &embedding, &stress)?;
    if !is_strictly_convex(g, &embedding, &heights) {
        return Err(Error::NotInEquilibrium(0.0));
    }
    let points: Vec<Point> = embedding
        .positions
        .iter()
        .zip(&heights)
        .map(|(p, h)| vec![p[0].clone(), p[1].clone(), h.clone()])
        .collect();
    let polytope = convex_hull(&points)?;
    if polytope.vertices().len() != points.len() {
        return Err(Error::NotPlanar);
    }
    Ok(LiftedRealization { embedding, stress, heights, polytope })
}

/// Outcome of realizing a graph as a 3-polytope.
#[derive(Clone, Debug)]
pub struct SteinitzRealization {
    pub polytope: Polytope,
    /// The lift that was computed; of the dual graph when `via_dual` holds.
    pub lift: LiftedRealization,
    pub via_dual: bool,
}

/// A 3-polytope whose graph is isomorphic to the planar 3-connected graph `g`.
pub fn steinitz_realize(g: &Graph) -> Result<SteinitzRealization> {
    if g.node_count() < 4 || !k_connected(g, 3)? {
        return Err(Error::NotThreeConnected);
    }
    let (lift, via_dual) = match peripheral_cycle(g, 3) {
        Some(t) => (lift_realization(g, &t)?, false),
        None => {
            let dual = planar_embedding(g)?.dual_graph(g);
            let t = peripheral_cycle(&dual, 3).ok_or(Error::NotPlanar)?;
            (lift_realization(&dual, &t)?, true)
        }
    };
    let polytope = if via_dual { lift.polytope.polar()? } else { lift.polytope.clone() };
    if !polytope.graph().is_isomorphic(g) {
        return Err(Error::NotPlanar);
    }
    Ok(SteinitzRealization { polytope, lift, via_dual })
}
