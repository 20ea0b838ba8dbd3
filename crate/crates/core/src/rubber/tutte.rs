use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geom::{is_connected, linalg, Graph, Point, Rational};

/// Graph with pinned nodes and spring constants per edge.
#[derive(Clone, Debug)]
pub struct RubberProblem {
    pub graph: Graph,
    /// Pinned node coordinates, all of the same dimension.
    pub fixed: BTreeMap<usize, Vec<f64>>,
    /// Spring constant per edge in edge order; `None` means all ones.
    pub weights: Option<Vec<f64>>,
}

impl RubberProblem {
    pub fn new(graph: Graph, fixed: BTreeMap<usize, Vec<f64>>) -> Self {
        RubberProblem { graph, fixed, weights: None }
    }

    fn weight(&self, e: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[e])
    }

    fn validate(&self) -> Result<usize> {
        let n = self.graph.node_count();
        let dim = self.fixed.values().next().ok_or_else(|| Error::InvalidParameter("no fixed nodes".into()))?.len();
        for (&v, p) in &self.fixed {
            if v >= n {
                return Err(Error::UnknownNode(v));
            }
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter(format!("coordinates of node {v} are not finite")));
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.graph.edge_count() {
                return Err(Error::DimensionMismatch { expected: self.graph.edge_count(), found: w.len() });
            }
            if let Some(x) = w.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
                return Err(Error::InvalidParameter(format!("spring constants must be positive, got {x}")));
            }
        }
        if !is_connected(&self.graph) {
            return Err(Error::Disconnected);
        }
        Ok(dim)
    }

    /// `E = Σ δ_e ‖e‖²` for the given positions.
    pub fn energy(&self, positions: &[Vec<f64>]) -> f64 {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let d: f64 = positions[e.a].iter().zip(&positions[e.b]).map(|(x, y)| (x - y) * (x - y)).sum();
                self.weight(i) * d
            })
            .sum()
    }

    /// Max-norm residual of the equilibrium equations at free nodes.
    pub fn residual(&self, positions: &[Vec<f64>]) -> f64 {
        let mut worst: f64 = 0.0;
        for v in (0..self.graph.node_count()).filter(|v| !self.fixed.contains_key(v)) {
            let mut r = vec![0.0; positions[v].len()];
            for &w in self.graph.neighbors(v) {
                let k = self.weight(self.graph.edge_index(v, w).expect("neighbour edge"));
                for (ri, (a, b)) in r.iter_mut().zip(positions[v].iter().zip(&positions[w])) {
                    *ri += k * (a - b);
                }
            }
            worst = r.iter().fold(worst, |m, x| m.max(x.abs()));
        }
        worst
    }
}

/// Positions of all nodes minimizing the rubber-band energy with the pinned
/// nodes held fixed. Each free node ends at the weighted barycenter of its
/// neighbours.
pub fn tutte_embed(problem: &RubberProblem) -> Result<Vec<Vec<f64>>> {
    let dim = problem.validate()?;
    let g = &problem.graph;
    let n = g.node_count();
    let free: Vec<usize> = (0..n).filter(|v| !problem.fixed.contains_key(v)).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        index[v] = i;
    }
    let m = free.len();
    let mut lap = DMatrix::<f64>::zeros(m, m);
    let mut rhs = DMatrix::<f64>::zeros(m, dim);
    for (ei, e) in g.edges().iter().enumerate() {
        let k = problem.weight(ei);
        for (u, w) in [(e.a, e.b), (e.b, e.a)] {
            if index[u] == usize::MAX {
                continue;
            }
            lap[(index[u], index[u])] += k;
            if index[w] == usize::MAX {
                for c in 0..dim {
                    rhs[(index[u], c)] += k * problem.fixed[&w][c];
                }
            } else {
                lap[(index[u], index[w])] -= k;
            }
        }
    }
    let mut out: Vec<Vec<f64>> = (0..n).map(|v| problem.fixed.get(&v).cloned().unwrap_or_default()).collect();
    if m > 0 {
        let chol = lap.cholesky().ok_or(Error::SingularSystem)?;
        for c in 0..dim {
            let x = chol.solve(&DVector::from_iterator(m, rhs.column(c).iter().copied()));
            for (i, &v) in free.iter().enumerate() {
                out[v].push(x[i]);
            }
        }
    }
    Ok(out)
}

/// Exact rubber-band embedding with rational pins and weights.
pub fn tutte_embed_exact(g: &Graph, fixed: &BTreeMap<usize, Point>, weights: &[Rational]) -> Result<Vec<Point>> {
    let n = g.node_count();
    let dim = fixed.values().next().ok_or_else(|| Error::InvalidParameter("no fixed nodes".into()))?.len();
    if weights.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), found: weights.len() });
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let free: Vec<usize> = (0..n).filter(|v| !fixed.contains_key(v)).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        index[v] = i;
    }
    let m = free.len();
    // Augmented system [L_ff | rhs].
    let mut rows = vec![vec![Rational::zero(); m + dim]; m];
    for (e, k) in g.edges().iter().zip(weights) {
        for (u, w) in [(e.a, e.b), (e.b, e.a)] {
            if index[u] == usize::MAX {
                continue;
            }
            let row = &mut rows[index[u]];
            row[index[u]] += k;
            if index[w] == usize::MAX {
                for c in 0..dim {
                    row[m + c] += k * &fixed[&w][c];
                }
            } else {
                row[index[w]] -= k;
            }
        }
    }
    let mut out: Vec<Point> = (0..n).map(|v| fixed.get(&v).cloned().unwrap_or_default()).collect();
    if m > 0 {
        let (red, pivots) = linalg::rref(&rows);
        if pivots.len() < m || pivots[m - 1] != m - 1 {
            return Err(Error::SingularSystem);
        }
        for (i, &v) in free.iter().enumerate() {
            out[v] = red[i][m..].to_vec();
        }
    }
    Ok(out)
}
