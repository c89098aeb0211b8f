//! Vertex connectivity via unit-capacity max-flow on the split graph.
//!
//! Every vertex `v` becomes an arc `v_in -> v_out` of capacity one; every
//! edge `uv` becomes arcs `u_out -> v_in` and `v_out -> u_in` of unbounded
//! capacity. The max flow from `s_out` to `t_in` equals the number of
//! internally vertex-disjoint `s`-`t` paths.

use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

const INF: u32 = u32::MAX / 2;

struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or no path remains.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut via = vec![usize::MAX; self.out.len()];
        while flow < limit {
            via.fill(usize::MAX);
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &arc in &self.out[u] {
                    let v = self.head[arc];
                    if self.cap[arc] > 0 && v != source && via[v] == usize::MAX {
                        via[v] = arc;
                        if v == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = sink;
            while v != source {
                let arc = via[v];
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                v = self.head[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally disjoint paths between non-adjacent `s` and
/// `t`, stopping early once `limit` is reached.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> Result<usize> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t || g.has_edge(s, t) {
        return Err(Error::InvalidInput(format!(
            "local connectivity needs distinct non-adjacent vertices, got {s} and {t}"
        )));
    }
    let n = g.vertex_count();
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { INF } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, INF);
        net.add_arc(2 * v + 1, 2 * u, INF);
    }
    Ok(net.max_flow(2 * s + 1, 2 * t, limit))
}

/// `κ(g)`: the size of a minimum vertex cut, or `n - 1` for complete graphs.
///
/// Uses Even's reduction: some vertex among the first `κ + 1` lies outside a
/// minimum cut, so only pairs `(i, j)` with `i <= κ_current` are examined.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidInput(
            "vertex connectivity needs at least 2 vertices".into(),
        ));
    }
    let mut best = n - 1;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j, best)?);
            }
        }
        i += 1;
    }
    Ok(best)
}
