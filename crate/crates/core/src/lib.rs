//! Exact polytope kernel and drawing engine for polytopal graphs.
//!
//! The crate is organised around one exact-arithmetic geometry kernel
//! ([`geom`]) and a set of constructions that turn polyhedral objects into
//! graphs worth drawing:
//!
//! * [`schlegel`] projects a polytope onto one of its facets and implements
//!   the interactive viewpoint rules (zoom, facet selection, two drag modes).
//! * [`spring`] is a force-directed embedder in three dimensions with an
//!   optional vertical objective force.
//! * [`rubber`] computes rubber-band (Tutte) embeddings by linear solves and
//!   realizes planar 3-connected graphs as 3-polytopes via a Maxwell lift.
//! * [`tightspan`] builds the bounded subcomplex of the polyhedron attached
//!   to a finite metric.
//! * [`tropical`] builds tropical polytopes as bounded subcomplexes.
//! * [`pdgraph`] builds primal-dual graphs of simplicial complexes.
//! * [`scene`] is the serialization boundary: scenes, exporters, and the
//!   interactive session model consumed by the HTTP layer.
//!
//! All combinatorial decisions are made with exact rationals; drawings use
//! `f64`.

pub mod error;
pub mod geom;
pub mod pdgraph;
pub mod rubber;
pub mod scene;
pub mod schlegel;
pub mod spring;
pub mod tightspan;
pub mod tropical;

pub use error::{Error, ErrorKind, Result};
pub use geom::{Graph, NodeKind, Polyhedron, Polytope, Rational};
pub use scene::Scene;
