//! Tree decompositions: construction, validation against a host graph, width,
//! and the lift of a factor decomposition to a cartesian product.

mod chordal;
mod elimination;
mod exact;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub use chordal::{chordal_clique_number, is_chordal, perfect_elimination_ordering};
pub use elimination::{
    decomposition_from_ordering, elimination_width, heuristic_upper_bound, Strategy,
};
pub use exact::{exact_treewidth, ExactBudget, TREEWIDTH_CEILING};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    tree_edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UncoveredEdge { u: usize, v: usize },
    MissingVertex { v: usize },
    DisconnectedOccurrence { v: usize },
    VertexOutOfRange { bag: usize, v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncoveredEdge { u, v } => write!(f, "edge ({u},{v}) is in no bag"),
            Violation::MissingVertex { v } => write!(f, "vertex {v} is in no bag"),
            Violation::DisconnectedOccurrence { v } => {
                write!(f, "bags containing vertex {v} do not form a subtree")
            }
            Violation::VertexOutOfRange { bag, v } => {
                write!(f, "bag {bag} contains vertex {v} outside the host graph")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl TreeDecomposition {
    /// Fails with [`Error::Structural`] unless `tree_edges` form a tree on
    /// `bags.len()` nodes.
    pub fn new(bags: Vec<VertexSet>, tree_edges: Vec<(usize, usize)>) -> Result<Self> {
        check_tree(bags.len(), &tree_edges)?;
        let tree_edges = tree_edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Ok(TreeDecomposition { bags, tree_edges })
    }

    /// One bag holding every vertex of `g`.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![(0..g.vertex_count()).collect()],
            tree_edges: Vec::new(),
        }
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> Result<usize> {
        self.bags
            .iter()
            .map(BTreeSet::len)
            .max()
            .map(|m| m.saturating_sub(1))
            .ok_or_else(|| Error::InvalidInput("decomposition has no bags".into()))
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Checks edge coverage and the subtree property against `g`.
    pub fn validate(&self, g: &Graph) -> ValidationReport {
        let n = g.vertex_count();
        let mut violations = Vec::new();
        let mut occurrences = vec![0usize; n];
        let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    violations.push(Violation::VertexOutOfRange { bag: i, v });
                } else {
                    occurrences[v] += 1;
                    bags_of[v].push(i);
                }
            }
        }
        for (u, v) in g.edges() {
            let covered = bags_of[u].iter().any(|b| self.bags[*b].contains(&v));
            if !covered {
                violations.push(Violation::UncoveredEdge { u, v });
            }
        }
        // The bags holding v induce a forest in the tree; it is connected iff
        // it has exactly one more node than edges.
        let mut shared_edges = vec![0usize; n];
        for &(a, b) in &self.tree_edges {
            for &v in self.bags[a].intersection(&self.bags[b]) {
                if v < n {
                    shared_edges[v] += 1;
                }
            }
        }
        for v in 0..n {
            if occurrences[v] == 0 {
                violations.push(Violation::MissingVertex { v });
            } else if occurrences[v] != shared_edges[v] + 1 {
                violations.push(Violation::DisconnectedOccurrence { v });
            }
        }
        ValidationReport { violations }
    }

    /// Contracts tree edges whose one bag is contained in the other until
    /// none remain, then renumbers nodes in their original order.
    pub fn normalized(&self) -> TreeDecomposition {
        let m = self.bags.len();
        let mut alive = vec![true; m];
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
        for &(a, b) in &self.tree_edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        loop {
            let mut merge = None;
            'search: for a in (0..m).filter(|&a| alive[a]) {
                for &b in &adj[a] {
                    if self.bags[a].is_subset(&self.bags[b]) {
                        merge = Some((a, b));
                        break 'search;
                    }
                }
            }
            let Some((gone, keep)) = merge else { break };
            alive[gone] = false;
            let neighbours = std::mem::take(&mut adj[gone]);
            for x in neighbours {
                adj[x].remove(&gone);
                if x != keep {
                    adj[x].insert(keep);
                    adj[keep].insert(x);
                }
            }
        }
        let mut index = vec![usize::MAX; m];
        let mut bags = Vec::new();
        for a in (0..m).filter(|&a| alive[a]) {
            index[a] = bags.len();
            bags.push(self.bags[a].clone());
        }
        let tree_edges = (0..m)
            .filter(|&a| alive[a])
            .flat_map(|a| adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .map(|(a, b)| (index[a], index[b]))
            .collect();
        TreeDecomposition { bags, tree_edges }
    }
}

fn check_tree(nodes: usize, edges: &[(usize, usize)]) -> Result<()> {
    if nodes == 0 {
        return if edges.is_empty() {
            Ok(())
        } else {
            Err(Error::Structural("tree edges without nodes".into()))
        };
    }
    if edges.len() != nodes - 1 {
        return Err(Error::Structural(format!(
            "a tree on {nodes} nodes has {} edges, found {}",
            nodes - 1,
            edges.len()
        )));
    }
    // union-find: n - 1 edges and no cycle means a spanning tree
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in edges {
        if a >= nodes || b >= nodes {
            return Err(Error::Structural(format!(
                "tree edge ({a},{b}) names a node outside 0..{nodes}"
            )));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::Structural(format!(
                "tree edge ({a},{b}) closes a cycle"
            )));
        }
        parent[ra] = rb;
    }
    Ok(())
}

/// Lifts a decomposition of `G` to one of `G □ H`: node `x` gets the bag
/// `{(v, w) : v ∈ T_x, w ∈ V(H)}` in flat ids. Tree shape is unchanged.
pub fn chordal_lift(td_g: &TreeDecomposition, g: &Graph, h: &Graph) -> Result<TreeDecomposition> {
    let report = td_g.validate(g);
    if !report.is_ok() {
        return Err(Error::InvalidInput(format!(
            "factor decomposition is invalid: {}",
            report.violations[0]
        )));
    }
    let hn = h.vertex_count();
    let bags = td_g
        .bags
        .iter()
        .map(|bag| {
            bag.iter()
                .flat_map(|&v| (0..hn).map(move |w| v * hn + w))
                .collect()
        })
        .collect();
    Ok(TreeDecomposition {
        bags,
        tree_edges: td_g.tree_edges.clone(),
    })
}
