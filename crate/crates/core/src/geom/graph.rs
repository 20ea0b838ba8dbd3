use std::collections::VecDeque;

use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Primal,
    Dual,
    Taxon,
    #[default]
    Generic,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Node {
    pub label: String,
    #[serde(default)]
    pub kind: NodeKind,
}

/// Undirected edge with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge { a: u.min(v), b: u.max(v) }
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Simple undirected graph with labelled nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// `n` generic nodes labelled `0..n`.
    pub fn new(n: usize) -> Self {
        Self::with_nodes((0..n).map(|i| Node { label: i.to_string(), kind: NodeKind::Generic }).collect())
    }

    pub fn with_nodes(nodes: Vec<Node>) -> Self {
        let n = nodes.len();
        Graph { nodes, edges: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_node(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.adjacency.push(Vec::new());
        self.nodes.len() - 1
    }

    /// Adds `{u, v}`; loops, parallel edges and unknown nodes are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        let n = self.nodes.len();
        if u >= n {
            return Err(Error::UnknownNode(u));
        }
        if v >= n {
            return Err(Error::UnknownNode(v));
        }
        if u == v {
            return Err(Error::Malformed(format!("loop at node {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Malformed(format!("parallel edge {u}-{v}")));
        }
        let pos = self.adjacency[u].binary_search(&v).unwrap_err();
        self.adjacency[u].insert(pos, v);
        let pos = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(pos, u);
        self.edges.push(Edge::new(u, v));
        Ok(self.edges.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &Node {
        &self.nodes[v]
    }

    pub fn node_mut(&mut self, v: usize) -> &mut Node {
        &mut self.nodes[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let e = Edge::new(u, v);
        self.edges.iter().position(|&x| x == e)
    }

    /// Connected components as sorted node lists, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn to_petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::with_capacity(self.node_count(), self.edge_count());
        let idx: Vec<_> = (0..self.node_count()).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(idx[e.a], idx[e.b], ());
        }
        g
    }

    /// Unlabelled graph isomorphism.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.node_count() == other.node_count()
            && self.edge_count() == other.edge_count()
            && petgraph::algo::is_isomorphic(&self.to_petgraph(), &other.to_petgraph())
    }

    /// Induced subgraph on `keep` (in the given order), with node payloads.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.node_count()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::with_nodes(keep.iter().map(|&v| self.nodes[v].clone()).collect());
        for e in &self.edges {
            if pos[e.a] != usize::MAX && pos[e.b] != usize::MAX {
                g.add_edge(pos[e.a], pos[e.b]).expect("induced edges are simple");
            }
        }
        g
    }
}
