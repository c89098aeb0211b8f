//! Simple undirected graphs with 0-based integer vertex ids.
//!
//! A [`Graph`] is immutable once built. Adjacency lists are kept sorted so
//! that edge queries are a binary search and iteration order is stable.

mod connectivity;
mod generate;
mod product;

use std::collections::{BTreeSet, VecDeque};

use crate::error::{check_vertex, Error, Result};

pub use connectivity::{local_connectivity, vertex_connectivity};
pub use generate::{complete, cycle, generate, grid, path, path_power, random_ktree, Family};
pub use product::{cartesian_product, ProductGraph};

/// A set of vertex ids. Ordered so that output and tie-breaking are deterministic.
pub type VertexSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a simple graph, rejecting self-loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!(
                    "parallel edge between {u} and {}",
                    w[0]
                )));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count == n * n.saturating_sub(1) / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        check_vertex(v, self.vertex_count())
    }

    pub fn check_subset<'a, I>(&self, set: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a usize>,
    {
        set.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Number of edges with both endpoints in `s`.
    pub fn induced_edge_count(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|&u| {
                self.adj[u]
                    .iter()
                    .filter(|&&v| u < v && s.contains(&v))
                    .count()
            })
            .sum()
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// increasing id order.
    pub fn induced_subgraph(&self, vertices: &VertexSet) -> Result<Graph> {
        self.check_subset(vertices)?;
        let index: Vec<usize> = vertices.iter().copied().collect();
        let pos = |v: usize| index.binary_search(&v).ok();
        let edges: Vec<_> = index
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| {
                self.adj[u]
                    .iter()
                    .filter_map(move |&v| pos(v).filter(|&j| i < j).map(|j| (i, j)))
            })
            .collect();
        Graph::from_edges(index.len(), edges)
    }

    /// Adjacency bitmasks; only available for graphs with at most 64 vertices.
    pub(crate) fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect(),
        )
    }

    pub fn is_connected(&self) -> bool {
        let all: VertexSet = (0..self.vertex_count()).collect();
        self.vertex_count() <= 1 || connected_within(self, &all)
    }
}

/// True iff `s` is non-empty and induces a connected subgraph of `g`.
pub fn is_connected_subset(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_subset(s)?;
    Ok(!s.is_empty() && connected_within(g, s))
}

fn connected_within(g: &Graph, s: &VertexSet) -> bool {
    let Some(&start) = s.iter().next() else {
        return false;
    };
    let mut seen = VertexSet::new();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if s.contains(&v) && seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen.len() == s.len()
}
