//! Command-line surface. Every subcommand builds a scene (or a raw record)
//! and writes it in the requested format.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polydraw_core::geom::io::polytope_to_json;
use polydraw_core::geom::{format_rational, parse_rational, to_f64};
use polydraw_core::pdgraph::{
    build_pd_graph, genus_two_solid, min_c4_triangulation, solid_preset, visualize_pd, PdLengths, SimplicialComplex,
};
use polydraw_core::rubber::{convex_polygon, planar_embedding, planar_tutte, steinitz_realize, PlanarEmbedding};
use polydraw_core::scene::session::{schlegel_scene, spring_scene, Command as SessionCommand};
use polydraw_core::scene::{export, Camera, EdgeKind, Format, Metadata, Scene, Session, SessionConfig, Source};
use polydraw_core::schlegel::{init_state, select_facet};
use polydraw_core::spring::{self, desired_lengths_from_coords, Norm, SpringParams};
use polydraw_core::tightspan::{tight_span, visualize_tightspan, Metric, TightSpanMode};
use polydraw_core::tropical::{
    tropical_cyclic, tropical_permutohedron_matrix, tropical_polytope, visualize_tropical, Side, TropicalMatrix,
    TropicalView,
};
use polydraw_core::{Error, ErrorKind, Graph, Result};

use crate::object::{load, Object};

#[derive(Debug, Parser)]
#[command(name = "polydraw", version, about = "Construct polytopes and derived complexes and draw their graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "POLYDRAW_SEED")]
    pub seed: Option<u64>,
    /// JSON file with spring parameters.
    #[arg(long, global = true, env = "POLYDRAW_PARAMS")]
    pub params: Option<PathBuf>,
    /// Output format; `raw` writes the underlying record where there is one.
    #[arg(long, global = true, env = "POLYDRAW_FORMAT", value_enum)]
    pub format: Option<OutFormat>,
    /// Output file; standard output if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Camera rotation about the z-axis for SVG output of 3D scenes.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub azimuth: Option<f64>,
    /// Camera tilt for SVG output of 3D scenes.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub elevation: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Svg,
    Obj,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LengthNorm {
    Euclidean,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpanMode {
    Combinatorial,
    ApproximateMetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TropView {
    Combinatorial,
    FirstM,
    LastN,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Build a polytope from a family spec such as `cube:3`, `cyclic:4:8` or `simplex:2*cube:3`.
    Construct {
        object: String,
        /// Replace the polytope by its polar about the vertex barycenter.
        #[arg(long)]
        polar: bool,
    },
    /// Schlegel diagram on a facet.
    Schlegel {
        object: String,
        #[arg(long, conflicts_with = "marked")]
        facet: Option<usize>,
        /// Vertices whose unique common facet is used.
        #[arg(long, value_delimiter = ',')]
        marked: Vec<usize>,
        /// Zoom in (0,1), e.g. `1/3`.
        #[arg(long)]
        zoom: Option<String>,
        /// JSON file with session commands applied after the setup.
        #[arg(long)]
        commands: Option<PathBuf>,
    },
    /// Force-directed embedding of a graph in 3D.
    Spring {
        object: String,
        #[arg(long)]
        polar: bool,
        /// Vertical objective: `coord:K` (vertex coordinate K) or `linear:a,b,...`.
        #[arg(long)]
        objective: Option<String>,
        /// Desired edge lengths from the vertex coordinates.
        #[arg(long, value_enum)]
        lengths: Option<LengthNorm>,
    },
    /// Rubber-band embedding of a planar 3-connected graph in the plane.
    Tutte {
        object: String,
        /// Outer face cycle; a short peripheral cycle is chosen if absent.
        #[arg(long, value_delimiter = ',')]
        outer: Vec<usize>,
    },
    /// Realize a planar 3-connected graph as a 3-polytope.
    Realize { object: String },
    /// Tight span of a finite metric.
    Tightspan {
        metric: PathBuf,
        #[arg(long, value_enum, default_value = "combinatorial")]
        mode: SpanMode,
    },
    /// Tropical polytope of a matrix file, `cyclic:m:n` or `permutohedron:n`.
    Tropical {
        matrix: String,
        #[arg(long, value_enum, default_value = "combinatorial")]
        view: TropView,
    },
    /// Primal-dual graph of a simplicial complex file, `min-c4` or `genus-two`.
    Pdgraph {
        complex: String,
        /// Primal, dual and artificial desired lengths.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        lengths: Vec<f64>,
        /// Lengths and repulsion tuned for solid 3-complexes.
        #[arg(long, conflicts_with = "lengths")]
        solid: bool,
        #[arg(long)]
        hide_artificial: bool,
    },
    /// Serve an interactive session over HTTP.
    Serve {
        object: String,
        #[arg(long, env = "POLYDRAW_LISTEN", default_value = "127.0.0.1:8080")]
        listen: String,
        #[arg(long, default_value_t = 0)]
        facet: usize,
        /// JSON command log replayed into the default session at start-up.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Convert a scene JSON file to another format.
    Export { scene: PathBuf },
}

/// Exit status for a failed run.
pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Validation => 3,
        ErrorKind::Computation => 4,
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl Global {
    pub fn spring_params(&self) -> Result<SpringParams> {
        let mut p: SpringParams = match &self.params {
            Some(path) => serde_json::from_str(&read(path)?)?,
            None => SpringParams::default(),
        };
        if let Some(s) = self.seed {
            p.seed = s;
        }
        p.validate()?;
        Ok(p)
    }

    fn camera(&self) -> Camera {
        let d = Camera::default();
        Camera { azimuth: self.azimuth.unwrap_or(d.azimuth), elevation: self.elevation.unwrap_or(d.elevation) }
    }

    /// Scene bytes in the requested format (JSON by default).
    pub fn render(&self, scene: &Scene) -> Result<Vec<u8>> {
        let format = match self.format.unwrap_or(OutFormat::Json) {
            OutFormat::Json => Format::Json,
            OutFormat::Svg => Format::Svg,
            OutFormat::Obj => Format::Obj,
            OutFormat::Raw => return Err(Error::InvalidParameter("raw output is not available here".into())),
        };
        export(scene, format, Some(self.camera()))
    }
}

fn with_polar(o: Object, polar: bool) -> Result<Object> {
    if !polar {
        return Ok(o);
    }
    Ok(Object::Polytope(o.polytope()?.polar()?))
}

fn objective(o: &Object, spec: &str) -> Result<Vec<f64>> {
    let p = o.polytope()?;
    let coeffs: Vec<f64> = if let Some(k) = spec.strip_prefix("coord:") {
        let k: usize = k.parse().map_err(|_| Error::InvalidParameter(format!("bad coordinate in {spec:?}")))?;
        if k >= p.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: k + 1 });
        }
        (0..p.ambient_dim()).map(|i| if i == k { 1.0 } else { 0.0 }).collect()
    } else if let Some(list) = spec.strip_prefix("linear:") {
        list.split(',').map(|x| parse_rational(x).map(|q| to_f64(&q))).collect::<Result<_>>()?
    } else {
        return Err(Error::InvalidParameter(format!("objective must be coord:K or linear:a,b,..., got {spec:?}")));
    };
    if coeffs.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: coeffs.len() });
    }
    Ok(p.vertices_f64().iter().map(|v| v.iter().zip(&coeffs).map(|(x, c)| x * c).sum()).collect())
}

fn planar_scene(g: &Graph, emb: &PlanarEmbedding, meta: Metadata) -> Result<Scene> {
    let mut s = Scene::from_graph(g, &emb.positions_f64(), meta.with_param("outer", emb.outer()))?;
    for e in &mut s.edges {
        e.kind = EdgeKind::Primal;
    }
    Ok(s)
}

fn complex(name: &str) -> Result<SimplicialComplex> {
    match name {
        "min-c4" => Ok(min_c4_triangulation()),
        "genus-two" => Ok(genus_two_solid()),
        path => SimplicialComplex::parse(&read(Path::new(path))?),
    }
}

fn tropical_matrix(name: &str) -> Result<TropicalMatrix> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |i: usize| -> Result<usize> {
        parts.get(i).and_then(|x| x.parse().ok()).ok_or_else(|| Error::InvalidParameter(format!("bad spec {name:?}")))
    };
    match parts[0] {
        "cyclic" if !Path::new(name).is_file() => tropical_cyclic(num(1)?, num(2)?),
        "permutohedron" if !Path::new(name).is_file() => tropical_permutohedron_matrix(num(1)?),
        _ => TropicalMatrix::parse(&read(Path::new(name))?),
    }
}

/// Runs a non-serving subcommand and returns the bytes to write.
pub fn run(cli: &Cli) -> Result<Vec<u8>> {
    let g = &cli.global;
    let raw = g.format == Some(OutFormat::Raw);
    match &cli.command {
        Cmd::Construct { object, polar } => {
            let o = with_polar(load(object)?, *polar)?;
            let p = o.polytope()?;
            if raw || g.format.is_none() {
                return Ok(polytope_to_json(p).into_bytes());
            }
            let meta = Metadata::new("construct").with_param("object", object).with_param("polar", polar);
            g.render(&Scene::from_polytope(p, meta)?)
        }
        Cmd::Schlegel { object, facet, marked, zoom, commands } => {
            let p = Arc::new(load(object)?.polytope()?.clone());
            let f = if marked.is_empty() { facet.unwrap_or(0) } else { select_facet(&p, marked)? };
            let mut state = init_state(p.clone(), f)?;
            if let Some(z) = zoom {
                state = state.set_zoom(parse_rational(z)?)?;
            }
            let mut scene = match commands {
                None => schlegel_scene(&state)?,
                Some(path) => {
                    let cmds: Vec<SessionCommand> = serde_json::from_str(&read(path)?)?;
                    let config = SessionConfig { facet: f, spring: g.spring_params()? };
                    let mut s = Session::new(Source::Polytope(p), config)?;
                    if let Some(z) = zoom {
                        s.apply(SessionCommand::Zoom { zeta: polydraw_core::scene::session::Number::Exact(z.clone()) })?;
                    }
                    for c in cmds {
                        s.apply(c)?;
                    }
                    s.scene()?
                }
            };
            scene.metadata.parameters.insert("object".into(), object.clone().into());
            g.render(&scene)
        }
        Cmd::Spring { object, polar, objective: obj, lengths } => {
            let o = with_polar(load(object)?, *polar)?;
            let graph = o.graph();
            let params = g.spring_params()?;
            let lambda = obj.as_deref().map(|s| objective(&o, s)).transpose()?;
            let mut scale = None;
            let ls = match lengths {
                None => None,
                Some(norm) => {
                    let norm = if *norm == LengthNorm::Max { Norm::Maxnorm } else { Norm::Euclidean };
                    let base = desired_lengths_from_coords(&graph, &o.polytope()?.vertices_f64(), norm)?;
                    let s = spring::stable_length_scale(&graph, &base, params.delta_visc);
                    scale = Some(s);
                    Some(base.iter().map(|l| l * s).collect::<Vec<_>>())
                }
            };
            let r = spring::run(&graph, &params, lambda.as_deref(), ls.as_deref())?;
            let mut scene = spring_scene(&graph, &r.state, &params, Some(r.converged))?;
            let m = &mut scene.metadata.parameters;
            m.insert("object".into(), object.clone().into());
            m.insert("polar".into(), (*polar).into());
            if let Some(o) = obj {
                m.insert("objective".into(), o.clone().into());
            }
            if let Some(s) = scale {
                m.insert("length_scale".into(), s.into());
            }
            g.render(&scene)
        }
        Cmd::Tutte { object, outer } => {
            let graph = load(object)?.graph();
            let emb = if outer.is_empty() {
                planar_embedding(&graph)?
            } else {
                planar_tutte(&graph, outer, &convex_polygon(outer.len()))?
            };
            g.render(&planar_scene(&graph, &emb, Metadata::new("tutte").with_param("object", object))?)
        }
        Cmd::Realize { object } => {
            let graph = load(object)?.graph();
            let r = steinitz_realize(&graph)?;
            if raw {
                return Ok(polytope_to_json(&r.polytope).into_bytes());
            }
            let heights: Vec<String> = r.lift.heights.iter().map(format_rational).collect();
            let meta = Metadata::new("realize")
                .with_param("object", object)
                .with_param("via_dual", r.via_dual)
                .with_param("heights", heights);
            g.render(&Scene::from_polytope(&r.polytope, meta)?)
        }
        Cmd::Tightspan { metric, mode } => {
            let m = Metric::parse(&read(metric)?)?;
            let ts = tight_span(&m)?;
            let mode = match mode {
                SpanMode::Combinatorial => TightSpanMode::Combinatorial,
                SpanMode::ApproximateMetric => TightSpanMode::ApproximateMetric,
            };
            let (scene, _) = visualize_tightspan(&ts, mode, &g.spring_params()?)?;
            g.render(&scene)
        }
        Cmd::Tropical { matrix, view } => {
            let c = tropical_matrix(matrix)?;
            if raw {
                return Ok(c.to_json().into_bytes());
            }
            let t = tropical_polytope(&c)?;
            let view = match view {
                TropView::Combinatorial => TropicalView::Combinatorial,
                TropView::FirstM => TropicalView::Projection(Side::FirstM),
                TropView::LastN => TropicalView::Projection(Side::LastN),
            };
            g.render(&visualize_tropical(&t, view, &g.spring_params()?)?)
        }
        Cmd::Pdgraph { complex: name, lengths, solid, hide_artificial } => {
            let k = complex(name)?;
            if raw {
                return Ok(k.to_json().into_bytes());
            }
            let (ls, params) = if *solid {
                let (ls, mut p) = solid_preset(g.seed.unwrap_or(0));
                if g.params.is_some() {
                    p = g.spring_params()?;
                }
                (ls, p)
            } else if lengths.is_empty() {
                (PdLengths::default(), g.spring_params()?)
            } else {
                (PdLengths { primal: lengths[0], dual: lengths[1], artificial: lengths[2] }, g.spring_params()?)
            };
            let mut scene = visualize_pd(&build_pd_graph(&k), &ls, &params)?;
            if *hide_artificial {
                scene = scene.without_edge_kind(EdgeKind::Artificial);
            }
            scene.metadata.parameters.insert("complex".into(), name.clone().into());
            g.render(&scene)
        }
        Cmd::Export { scene } => {
            let s = Scene::from_json(&read(scene)?)?;
            g.render(&s)
        }
        Cmd::Serve { .. } => Err(Error::InvalidParameter("serve does not produce output".into())),
    }
}
