//! Interactive sessions: a served object, the current Schlegel viewpoint and
//! spring state, and the log of accepted commands. Replaying the log from
//! the same source reproduces the session exactly.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{EdgeKind, Metadata, Scene};
use crate::error::{Error, Result};
use crate::geom::{format_rational, from_f64, parse_rational, sub, Graph, Point, Polytope, Rational};
use crate::schlegel::{self, SchlegelState};
use crate::spring::{init_random_sphere, EmbeddingState, SpringParams, SpringSystem};

/// Upper bound on the steps of a single `spring_step` command.
pub const MAX_STEPS_PER_COMMAND: usize = 100_000;

/// A coordinate or number sent by a client: a JSON number or an exact
/// rational string such as `"1/3"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Exact(String),
    Float(f64),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Exact(s) => parse_rational(s),
            Number::Float(x) => from_f64(*x).ok_or_else(|| Error::InvalidParameter(format!("non-finite number {x}"))),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        Ok(crate::geom::to_f64(&self.to_rational()?))
    }
}

impl From<&Rational> for Number {
    fn from(q: &Rational) -> Self {
        Number::Exact(format_rational(q))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpringParamsUpdate {
    pub delta_rep: Option<f64>,
    pub delta_visc: Option<f64>,
    pub delta_lin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    SelectFacet {
        marked: Vec<usize>,
    },
    Zoom {
        zeta: Number,
    },
    /// Points with one coordinate fewer than the polytope are diagram
    /// coordinates; full-length points are intrinsic coordinates.
    Drag {
        vertex: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<Vec<Number>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        displacement: Option<Vec<Number>>,
    },
    SpringParams(SpringParamsUpdate),
    SpringStep {
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum View {
    Schlegel,
    Spring,
}

#[derive(Clone, Debug)]
pub enum Source {
    Polytope(Arc<Polytope>),
    Graph(Graph),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SessionConfig {
    /// Initial projection facet.
    pub facet: usize,
    pub spring: SpringParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub view: View,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zoom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub viewpoint: Option<Vec<String>>,
    pub valid: bool,
    pub iteration: usize,
    pub fluctuation: f64,
    pub spring: SpringParams,
    pub commands: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub scene: Scene,
    pub state: Summary,
}

#[derive(Clone, Debug)]
pub struct Session {
    source: Source,
    config: SessionConfig,
    graph: Graph,
    schlegel: Option<SchlegelState>,
    params: SpringParams,
    spring: EmbeddingState,
    view: View,
    log: Vec<Command>,
}

impl Session {
    /// Starts on the Schlegel view of `config.facet` when the diagram can be
    /// drawn (polytopes of dimension 3 or 4), on the spring view otherwise.
    pub fn new(source: Source, config: SessionConfig) -> Result<Self> {
        config.spring.validate()?;
        let (graph, schlegel) = match &source {
            Source::Polytope(p) => {
                let s = if matches!(p.dim(), 2..=4) { Some(schlegel::init_state(p.clone(), config.facet)?) } else { None };
                (p.graph(), s)
            }
            Source::Graph(g) => (g.clone(), None),
        };
        let view = if schlegel.is_some() { View::Schlegel } else { View::Spring };
        let spring = init_random_sphere(&graph, config.spring.seed);
        Ok(Session { source, params: config.spring.clone(), config, graph, schlegel, spring, view, log: Vec::new() })
    }

    pub fn replay(source: Source, config: SessionConfig, commands: &[Command]) -> Result<Self> {
        let mut s = Session::new(source, config)?;
        for c in commands {
            s.apply(c.clone())?;
        }
        Ok(s)
    }

    pub fn log(&self) -> &[Command] {
        &self.log
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn schlegel_state(&self) -> Option<&SchlegelState> {
        self.schlegel.as_ref()
    }

    pub fn spring_state(&self) -> &EmbeddingState {
        &self.spring
    }

    fn polytope(&self) -> Result<&Arc<Polytope>> {
        match &self.source {
            Source::Polytope(p) => Ok(p),
            Source::Graph(_) => Err(Error::InvalidParameter("the served object is not a polytope".into())),
        }
    }

    fn schlegel(&self) -> Result<&SchlegelState> {
        self.polytope()?;
        self.schlegel
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("Schlegel diagrams are served for polytopes of dimension 2 to 4 only".into()))
    }

    /// Applies `command`; on error the session is unchanged and nothing is
    /// logged.
    pub fn apply(&mut self, command: Command) -> Result<Response> {
        match &command {
            Command::SelectFacet { marked } => {
                let s = self.schlegel()?;
                let facet = schlegel::select_facet(self.polytope()?, marked)?;
                let next = schlegel::init_state_with_zoom(s.polytope().clone(), facet, s.zoom().clone())?;
                self.schlegel = Some(next);
                self.view = View::Schlegel;
            }
            Command::Zoom { zeta } => {
                let next = self.schlegel()?.set_zoom(zeta.to_rational()?)?;
                self.schlegel = Some(next);
                self.view = View::Schlegel;
            }
            Command::Drag { vertex, target, displacement } => {
                let next = self.drag(*vertex, target.as_deref(), displacement.as_deref())?;
                self.schlegel = Some(next);
                self.view = View::Schlegel;
            }
            Command::SpringParams(u) => {
                let mut p = self.params.clone();
                if let Some(x) = u.delta_rep {
                    p.delta_rep = x;
                }
                if let Some(x) = u.delta_visc {
                    p.delta_visc = x;
                }
                if let Some(x) = u.delta_lin {
                    p.delta_lin = x;
                }
                p.validate()?;
                self.params = p;
                self.view = View::Spring;
            }
            Command::SpringStep { count } => {
                if *count > MAX_STEPS_PER_COMMAND {
                    return Err(Error::InvalidParameter(format!("at most {MAX_STEPS_PER_COMMAND} steps per command")));
                }
                let sys = SpringSystem::new(&self.graph, self.params.clone())?;
                let mut state = self.spring.clone();
                for _ in 0..*count {
                    state = sys.step_jittered(&state)?;
                    if !state.positions.iter().flatten().all(|x| x.is_finite()) {
                        return Err(Error::Diverged(state.iteration));
                    }
                }
                self.spring = state;
                self.view = View::Spring;
            }
        }
        self.log.push(command);
        self.response()
    }

    fn drag(&self, vertex: usize, target: Option<&[Number]>, displacement: Option<&[Number]>) -> Result<SchlegelState> {
        let s = self.schlegel()?;
        let p = s.polytope();
        if vertex >= p.vertices().len() {
            return Err(Error::InvalidParameter(format!("no vertex {vertex}")));
        }
        let diagram = s.diagram()?;
        let d = p.dim();
        let point = |x: &[Number]| -> Result<Point> {
            if x.len() + 1 == d {
                diagram.basis.lift_coordinates(&x.iter().map(Number::to_f64).collect::<Result<Vec<_>>>()?)
            } else if x.len() == d {
                x.iter().map(Number::to_rational).collect()
            } else {
                Err(Error::DimensionMismatch { expected: d - 1, found: x.len() })
            }
        };
        let on_facet = p.incidence()[s.facet()].contains(vertex);
        match (target, displacement) {
            (Some(t), None) if on_facet => s.drag_facet_vertex(vertex, &sub(&point(t)?, &diagram.positions[vertex])),
            (Some(t), None) => s.drag_nonfacet_vertex(vertex, &point(t)?),
            (None, Some(dv)) if on_facet => {
                let disp = if dv.len() + 1 == d {
                    sub(&point(dv)?, diagram.basis.origin())
                } else {
                    point(dv)?
                };
                s.drag_facet_vertex(vertex, &disp)
            }
            (None, Some(_)) => Err(Error::InvalidParameter(format!(
                "vertex {vertex} is not on the projection facet; drag it with a target"
            ))),
            _ => Err(Error::InvalidParameter("drag needs exactly one of target and displacement".into())),
        }
    }

    pub fn summary(&self) -> Summary {
        let sch = self.schlegel.as_ref();
        Summary {
            view: self.view,
            facet: sch.map(|s| s.facet()),
            zoom: sch.map(|s| format_rational(s.zoom())),
            viewpoint: sch.map(|s| s.viewpoint().iter().map(format_rational).collect()),
            valid: sch.is_none_or(|s| s.is_valid()),
            iteration: self.spring.iteration,
            fluctuation: self.spring.fluctuation(),
            spring: self.params.clone(),
            commands: self.log.len(),
        }
    }

    pub fn scene(&self) -> Result<Scene> {
        match (self.view, &self.schlegel) {
            (View::Schlegel, Some(s)) => schlegel_scene(s),
            _ => Ok(spring_scene(&self.graph, &self.spring, &self.params, None)?),
        }
    }

    pub fn response(&self) -> Result<Response> {
        Ok(Response { scene: self.scene()?, state: self.summary() })
    }
}

/// Diagram coordinates of a Schlegel state as a scene, padded to two
/// dimensions; vertices of the projection facet are marked as primal nodes.
pub fn schlegel_scene(s: &SchlegelState) -> Result<Scene> {
    let d = s.diagram()?;
    let p = s.polytope();
    let mut g = p.graph();
    let on_facet = &p.incidence()[s.facet()];
    for v in 0..g.node_count() {
        g.node_mut(v).kind = if on_facet.contains(v) { crate::geom::NodeKind::Primal } else { crate::geom::NodeKind::Generic };
    }
    let meta = Metadata::new("schlegel")
        .with_param("facet", s.facet())
        .with_param("zoom", format_rational(s.zoom()))
        .with_param("viewpoint", s.viewpoint().iter().map(format_rational).collect::<Vec<_>>())
        .with_param("valid", s.is_valid());
    let coords: Vec<Vec<f64>> = d
        .coords
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.resize(c.len().max(2), 0.0);
            c
        })
        .collect();
    let mut scene = Scene::from_graph(&g, &coords, meta)?;
    for e in &mut scene.edges {
        e.kind = EdgeKind::Primal;
    }
    Ok(scene)
}

/// Spring positions as a 3D scene.
pub fn spring_scene(g: &Graph, state: &EmbeddingState, params: &SpringParams, converged: Option<bool>) -> Result<Scene> {
    let mut meta = Metadata::new("spring")
        .with_param("spring", params)
        .with_param("iteration", state.iteration)
        .with_param("fluctuation", state.fluctuation())
        .with_seed(params.seed);
    if let Some(c) = converged {
        meta = meta.with_param("converged", c);
    }
    let positions: Vec<Vec<f64>> = state.positions.iter().map(|p| p.to_vec()).collect();
    Scene::from_graph(g, &positions, meta)
}
