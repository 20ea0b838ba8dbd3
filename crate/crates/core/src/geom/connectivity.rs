//! Vertex connectivity by unit-capacity max-flow (Menger).

use std::collections::VecDeque;

use super::graph::Graph;
use crate::error::{Error, Result};

pub fn is_connected(g: &Graph) -> bool {
    g.components().len() <= 1
}

/// Maximum number of internally vertex-disjoint paths between the
/// non-adjacent nodes `s` and `t`, capped at `cap`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    // Split every node v into v_in = 2v and v_out = 2v + 1 joined by a
    // unit arc; edges become infinite-capacity arcs out -> in both ways.
    let n = g.node_count();
    let size = 2 * n;
    let mut cap_m: Vec<std::collections::HashMap<usize, i64>> = vec![Default::default(); size];
    let big = n as i64 + 1;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        *cap_m[2 * v].entry(2 * v + 1).or_default() += c;
        cap_m[2 * v + 1].entry(2 * v).or_default();
    }
    for e in g.edges() {
        for (x, y) in [(e.a, e.b), (e.b, e.a)] {
            *cap_m[2 * x + 1].entry(2 * y).or_default() += big;
            cap_m[2 * y].entry(2 * x + 1).or_default();
        }
    }
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; size];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            let mut next: Vec<usize> = cap_m[u].iter().filter(|(_, &c)| c > 0).map(|(&v, _)| v).collect();
            next.sort_unstable();
            for v in next {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut v = sink;
        while v != source {
            let u = prev[v];
            *cap_m[u].get_mut(&v).unwrap() -= 1;
            *cap_m[v].entry(u).or_default() += 1;
            v = u;
        }
        flow += 1;
    }
    flow
}

/// True iff `g` has at least `k + 1` nodes and stays connected after
/// removing any `k - 1` nodes.
pub fn k_connected(g: &Graph, k: usize) -> Result<bool> {
    let n = g.node_count();
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if n <= k {
        return Err(Error::TooFewNodes { k, nodes: n });
    }
    if !is_connected(g) {
        return Ok(false);
    }
    if k == 1 {
        return Ok(true);
    }
    if (0..n).any(|v| g.degree(v) < k) {
        return Ok(false);
    }
    // Whitney: k-connected iff every non-adjacent pair is joined by k
    // internally disjoint paths. A separator with fewer than k nodes misses
    // one of the first k nodes, and that node is cut off from some other
    // node, so pairs through the first k nodes suffice.
    for s in 0..k {
        for t in s + 1..n {
            if !g.has_edge(s, t) && local_connectivity(g, s, t, k) < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
