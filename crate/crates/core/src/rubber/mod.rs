//! Rubber-band embeddings, Maxwell lifts and realization of planar
//! 3-connected graphs as 3-polytopes.

mod lift;
mod planar;
mod steinitz;
mod tutte;

pub use lift::{equilibrium_stress, fold_signs, is_strictly_convex, maxwell_lift, stress_residuals};
pub use planar::{
    convex_polygon, crossing_pairs, is_peripheral, peripheral_cycle, planar_embedding, planar_tutte,
    planar_tutte_weighted, segments_cross, PlanarEmbedding,
};
pub use steinitz::{lift_realization, steinitz_realize, LiftedRealization, SteinitzRealization};
pub use tutte::{tutte_embed, tutte_embed_exact, RubberProblem};
