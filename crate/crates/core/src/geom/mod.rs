//! Exact polytope kernel: rationals, hull and vertex enumeration, face
//! lattices, graphs and the standard constructions.

mod brute;
mod connectivity;
pub mod construct;
mod dd;
mod graph;
pub mod io;
mod lattice;
pub mod linalg;
mod polyhedron;
mod polytope;
mod rational;

pub use brute::vertex_enumeration_brute_force;
pub use connectivity::{is_connected, k_connected, local_connectivity};
pub use construct::{construct_standard, Family};
pub use graph::{Edge, Graph, Node, NodeKind};
pub use lattice::{Face, FaceLattice};
pub use polyhedron::{vertex_enumeration, Polyhedron};
pub use polytope::{convex_hull, AffineChart, Polytope};
pub use rational::{
    add, dot, format_rational, from_f64, parse_rational, primitive_integer_vector, scale, sub, to_f64, Halfspace,
    Point, Rational,
};
pub use rational::{barycenter, int, ratio};
