//! Force-directed embedding in three dimensions.
//!
//! Nodes repel non-neighbours with an inverse-square force and are pulled
//! towards neighbours by springs with a desired length. Optionally a linear
//! objective adds a vertical force that orders nodes by objective value.
//! Time is discretised with inertia damped by a viscosity factor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Graph;

pub type Vec3 = [f64; 3];

/// Distances below this count as coincident points.
pub const COINCIDENCE: f64 = 1e-12;
const JITTER: f64 = 1e-6;
const MAX_JITTERS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpringParams {
    pub delta_rep: f64,
    pub delta_visc: f64,
    pub delta_lin: f64,
    /// Desired edge length for edges without an explicit length; `None`
    /// picks [`auto_length`] from the maximum degree.
    pub length: Option<f64>,
    pub threshold: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for SpringParams {
    fn default() -> Self {
        SpringParams {
            delta_rep: 0.01,
            delta_visc: 0.85,
            delta_lin: 0.5,
            length: None,
            threshold: 1e-6,
            max_iters: 10_000,
            seed: 0,
        }
    }
}

impl SpringParams {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("delta_rep", self.delta_rep),
            ("delta_visc", self.delta_visc),
            ("delta_lin", self.delta_lin),
        ];
        for (name, x) in named {
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be a nonnegative number, got {x}")));
            }
        }
        if let Some(l) = self.length.filter(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::InvalidParameter(format!("length must be positive, got {l}")));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::InvalidParameter(format!("threshold must be positive, got {}", self.threshold)));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingState {
    pub positions: Vec<Vec3>,
    pub previous: Vec<Vec3>,
    pub iteration: usize,
}

impl EmbeddingState {
    /// A state at rest at the given positions.
    pub fn at_rest(positions: Vec<Vec3>) -> Self {
        EmbeddingState { previous: positions.clone(), positions, iteration: 0 }
    }

    /// `max_v ‖v_i − v_{i−1}‖²`.
    pub fn fluctuation(&self) -> f64 {
        self.positions.iter().zip(&self.previous).map(|(a, b)| norm2(sub(a, b))).fold(0.0, f64::max)
    }
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm2(a: Vec3) -> f64 {
    a[0] * a[0] + a[1] * a[1] + a[2] * a[2]
}

/// Default desired length `max(1, 1.25 Δ / (1 + δ_visc))` for maximum degree `Δ`.
///
/// Near equilibrium the springs act like a graph Laplacian scaled by `1/ℓ`,
/// whose eigenvalues are at most `2Δ/ℓ`; the damped update is stable for
/// eigenvalues below `2(1 + δ_visc)`.
pub fn auto_length(g: &Graph, delta_visc: f64) -> f64 {
    let max_degree = (0..g.node_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    (1.25 * max_degree as f64 / (1.0 + delta_visc)).max(1.0)
}

/// Smallest factor `s >= 1` such that the lengths `s·ℓ_e` keep the damped
/// update stable by the same bound as [`auto_length`]: every node has
/// `Σ 1/(s ℓ_e) <= (1 + δ_visc) / 1.25` over its edges.
pub fn stable_length_scale(g: &Graph, lengths: &[f64], delta_visc: f64) -> f64 {
    let mut stiffness = vec![0.0; g.node_count()];
    for (e, l) in g.edges().iter().zip(lengths) {
        stiffness[e.a] += 1.0 / l;
        stiffness[e.b] += 1.0 / l;
    }
    let worst = stiffness.into_iter().fold(0.0, f64::max);
    (1.25 * worst / (1.0 + delta_visc)).max(1.0)
}

/// Uniformly random positions on the unit sphere with zero inertia.
pub fn init_random_sphere(g: &Graph, seed: u64) -> EmbeddingState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positions = (0..g.node_count()).map(|_| UnitSphere.sample(&mut rng)).collect();
    EmbeddingState::at_rest(positions)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Euclidean,
    Maxnorm,
}

/// Desired lengths per edge (in edge order) from given coordinates.
pub fn desired_lengths_from_coords(g: &Graph, coords: &[Vec<f64>], norm: Norm) -> Result<Vec<f64>> {
    if coords.len() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), found: coords.len() });
    }
    g.edges()
        .iter()
        .map(|e| {
            let (a, b) = (&coords[e.a], &coords[e.b]);
            if a.len() != b.len() {
                return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
            }
            let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
            let l = match norm {
                Norm::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
                Norm::Maxnorm => diffs.fold(0.0, f64::max),
            };
            if l == 0.0 {
                return Err(Error::ZeroLengthEdge(e.a, e.b));
            }
            Ok(l)
        })
        .collect()
}

/// A graph with parameters, optional objective values and edge lengths.
#[derive(Clone, Debug)]
pub struct SpringSystem<'a> {
    graph: &'a Graph,
    params: SpringParams,
    objective: Option<Vec<f64>>,
    lengths: Option<Vec<f64>>,
    /// Per node: neighbours with desired lengths, sorted by neighbour.
    springs: Vec<Vec<(usize, f64)>>,
}

impl<'a> SpringSystem<'a> {
    pub fn new(graph: &'a Graph, params: SpringParams) -> Result<Self> {
        params.validate()?;
        let mut sys = SpringSystem { graph, params, objective: None, lengths: None, springs: Vec::new() };
        sys.rebuild_springs();
        Ok(sys)
    }

    fn rebuild_springs(&mut self) {
        let default = self.default_length();
        let mut springs = vec![Vec::new(); self.graph.node_count()];
        for (i, e) in self.graph.edges().iter().enumerate() {
            let l = self.lengths.as_ref().map_or(default, |ls| ls[i]);
            springs[e.a].push((e.b, l));
            springs[e.b].push((e.a, l));
        }
        for s in &mut springs {
            s.sort_by_key(|&(w, _)| w);
        }
        self.springs = springs;
    }

    /// Objective values per node for the vertical force.
    pub fn with_objective(mut self, objective: Vec<f64>) -> Result<Self> {
        if objective.len() != self.graph.node_count() {
            return Err(Error::DimensionMismatch { expected: self.graph.node_count(), found: objective.len() });
        }
        if objective.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("objective values must be finite".into()));
        }
        self.objective = Some(objective);
        Ok(self)
    }

    /// Desired lengths per edge, in the graph's edge order.
    pub fn with_lengths(mut self, lengths: &[f64]) -> Result<Self> {
        if lengths.len() != self.graph.edge_count() {
            return Err(Error::DimensionMismatch { expected: self.graph.edge_count(), found: lengths.len() });
        }
        if let Some(l) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::InvalidParameter(format!("desired lengths must be positive, got {l}")));
        }
        self.lengths = Some(lengths.to_vec());
        self.rebuild_springs();
        Ok(self)
    }

    /// Desired length of edges without an explicit length.
    pub fn default_length(&self) -> f64 {
        self.params.length.unwrap_or_else(|| auto_length(self.graph, self.params.delta_visc))
    }

    pub fn params(&self) -> &SpringParams {
        &self.params
    }

    pub fn set_params(&mut self, params: SpringParams) -> Result<()> {
        params.validate()?;
        self.params = params;
        self.rebuild_springs();
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    fn check_state(&self, state: &EmbeddingState) -> Result<()> {
        let n = self.graph.node_count();
        if state.positions.len() != n || state.previous.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: state.positions.len() });
        }
        Ok(())
    }

    /// `(v̄₃, λ̄)` for the vertical force.
    fn means(&self, pos: &[Vec3]) -> Option<(f64, f64)> {
        let lambda = self.objective.as_ref()?;
        let n = pos.len() as f64;
        Some((pos.iter().map(|p| p[2]).sum::<f64>() / n, lambda.iter().sum::<f64>() / n))
    }

    fn force_at(&self, pos: &[Vec3], v: usize, means: Option<(f64, f64)>) -> Result<Vec3> {
        let p = pos[v];
        let mut f = [0.0; 3];
        let springs = &self.springs[v];
        let mut next = springs.iter().peekable();
        for (w, q) in pos.iter().enumerate() {
            if w == v {
                continue;
            }
            let d = sub(q, &p);
            let s = norm2(d).sqrt();
            if s < COINCIDENCE {
                return Err(Error::SingularConfiguration { a: v.min(w), b: v.max(w), iteration: None });
            }
            while next.peek().is_some_and(|&&(u, _)| u < w) {
                next.next();
            }
            let k = match next.peek() {
                Some(&&(u, l)) if u == w => 1.0 / l - 1.0 / s,
                _ => -self.params.delta_rep / (s * s * s),
            };
            for i in 0..3 {
                f[i] += k * d[i];
            }
        }
        if let (Some(lambda), Some((zbar, lbar))) = (&self.objective, means) {
            f[2] += self.params.delta_lin * ((lambda[v] - lbar) - (p[2] - zbar));
        }
        Ok(f)
    }

    /// Force on node `v` in the given state.
    pub fn force(&self, state: &EmbeddingState, v: usize) -> Result<Vec3> {
        self.check_state(state)?;
        if v >= self.graph.node_count() {
            return Err(Error::UnknownNode(v));
        }
        self.force_at(&state.positions, v, self.means(&state.positions))
    }

    /// Forces on all nodes.
    pub fn forces(&self, state: &EmbeddingState) -> Result<Vec<Vec3>> {
        self.check_state(state)?;
        let means = self.means(&state.positions);
        (0..self.graph.node_count()).map(|v| self.force_at(&state.positions, v, means)).collect()
    }

    /// One synchronous update `v_{i+1} = v_i + f_v + δ_visc (v_i − v_{i−1})`.
    pub fn step(&self, state: &EmbeddingState) -> Result<EmbeddingState> {
        let forces = self.forces(state).map_err(|e| match e {
            Error::SingularConfiguration { a, b, .. } => {
                Error::SingularConfiguration { a, b, iteration: Some(state.iteration) }
            }
            e => e,
        })?;
        let c = self.params.delta_visc;
        let positions = state
            .positions
            .iter()
            .zip(&state.previous)
            .zip(&forces)
            .map(|((x, y), f)| {
                let mut z = [0.0; 3];
                for i in 0..3 {
                    z[i] = x[i] + f[i] + c * (x[i] - y[i]);
                }
                z
            })
            .collect();
        Ok(EmbeddingState { positions, previous: state.positions.clone(), iteration: state.iteration + 1 })
    }

    /// Like [`SpringSystem::step`], but coincident nodes are separated by a
    /// small seeded jitter instead of failing.
    pub fn step_jittered(&self, state: &EmbeddingState) -> Result<EmbeddingState> {
        let mut current = state.clone();
        for attempt in 0..=MAX_JITTERS {
            match self.step(&current) {
                Err(Error::SingularConfiguration { b, .. }) if attempt < MAX_JITTERS => {
                    let mut rng = ChaCha8Rng::seed_from_u64(
                        self.params.seed ^ (current.iteration as u64).rotate_left(32) ^ attempt as u64,
                    );
                    let dir: Vec3 = UnitSphere.sample(&mut rng);
                    let scale = JITTER * (1.0 + rng.random::<f64>());
                    for i in 0..3 {
                        current.positions[b][i] += scale * dir[i];
                    }
                }
                r => return r,
            }
        }
        unreachable!("loop returns on the last attempt")
    }

    /// Iterates from `state` until the fluctuation drops below the threshold
    /// for two consecutive steps or `max_iters` steps have been taken. Fails
    /// with [`Error::Diverged`] once a coordinate stops being finite.
    pub fn run_from(&self, state: EmbeddingState) -> Result<RunResult> {
        self.check_state(&state)?;
        let mut state = state;
        let mut steps = 0;
        while steps < self.params.max_iters {
            let next = self.step_jittered(&state)?;
            steps += 1;
            if next.fluctuation() < self.params.threshold {
                let peek = self.step_jittered(&next)?;
                if peek.fluctuation() < self.params.threshold {
                    return Ok(RunResult { state: next, converged: true });
                }
                state = peek;
                steps += 1;
            } else {
                state = next;
            }
            if !state.positions.iter().flatten().all(|x| x.is_finite()) {
                return Err(Error::Diverged(state.iteration));
            }
        }
        Ok(RunResult { state, converged: false })
    }

    /// Runs from random positions on the unit sphere.
    pub fn run(&self) -> Result<RunResult> {
        self.run_from(init_random_sphere(self.graph, self.params.seed))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub state: EmbeddingState,
    pub converged: bool,
}

/// Spring embedding of `g` with optional objective values and edge lengths.
pub fn run(g: &Graph, params: &SpringParams, objective: Option<&[f64]>, lengths: Option<&[f64]>) -> Result<RunResult> {
    let mut sys = SpringSystem::new(g, params.clone())?;
    if let Some(o) = objective {
        sys = sys.with_objective(o.to_vec())?;
    }
    if let Some(l) = lengths {
        sys = sys.with_lengths(l)?;
    }
    sys.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn spring_at_rest_length_has_no_force() {
        let g = k2();
        let sys = SpringSystem::new(&g, SpringParams { delta_rep: 0.0, ..Default::default() }).unwrap();
        let s = EmbeddingState::at_rest(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]);
        assert_eq!(sys.force(&s, 0).unwrap(), [0.0; 3]);
        assert_eq!(sys.step(&s).unwrap().positions, s.positions);
    }

    #[test]
    fn repulsion_is_inverse_square() {
        let g = Graph::new(2);
        let sys = SpringSystem::new(&g, SpringParams::default()).unwrap();
        let s = EmbeddingState::at_rest(vec![[0.0, 0.0, 0.0], [0.0, 2.0, 0.0]]);
        let f = sys.force(&s, 0).unwrap();
        assert!((f[1] + 0.01 / 4.0).abs() < 1e-15);
        assert_eq!((f[0], f[2]), (0.0, 0.0));
    }

    #[test]
    fn single_node_has_no_force() {
        let g = Graph::new(1);
        let sys = SpringSystem::new(&g, SpringParams::default()).unwrap();
        let s = EmbeddingState::at_rest(vec![[0.3, 0.0, 0.0]]);
        assert_eq!(sys.force(&s, 0).unwrap(), [0.0; 3]);
    }

    #[test]
    fn coincident_points_are_singular() {
        let g = Graph::new(2);
        let sys = SpringSystem::new(&g, SpringParams::default()).unwrap();
        let s = EmbeddingState::at_rest(vec![[0.0; 3], [0.0; 3]]);
        assert_eq!(sys.force(&s, 1).unwrap_err().code(), "singular_configuration");
        assert!(sys.step_jittered(&s).is_ok());
    }

    #[test]
    fn rejects_negative_constants() {
        let p = SpringParams { delta_visc: -1.0, ..Default::default() };
        assert!(p.validate().is_err());
        let p = SpringParams { threshold: 0.0, ..Default::default() };
        assert!(p.validate().is_err());
    }

    #[test]
    fn lengths_from_coordinates() {
        let g = k2();
        let l = desired_lengths_from_coords(&g, &[vec![0.0, 0.0], vec![3.0, 4.0]], Norm::Euclidean).unwrap();
        assert_eq!(l, vec![5.0]);
        let l = desired_lengths_from_coords(&g, &[vec![0.0, 1.0], vec![1.0, 0.0]], Norm::Maxnorm).unwrap();
        assert_eq!(l, vec![1.0]);
        let e = desired_lengths_from_coords(&g, &[vec![1.0], vec![1.0]], Norm::Maxnorm).unwrap_err();
        assert_eq!(e, Error::ZeroLengthEdge(0, 1));
    }
}
