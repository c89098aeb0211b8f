use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Greedy elimination rule. Ties go to the smallest vertex id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    MinDegree,
    MinFill,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min_degree" | "min-degree" => Ok(Strategy::MinDegree),
            "min_fill" | "min-fill" => Ok(Strategy::MinFill),
            other => Err(Error::InvalidParameter(format!(
                "unknown strategy `{other}`"
            ))),
        }
    }
}

struct Eliminator {
    adj: Vec<BTreeSet<usize>>,
    eliminated: Vec<bool>,
}

impl Eliminator {
    fn new(g: &Graph) -> Self {
        Eliminator {
            adj: (0..g.vertex_count())
                .map(|v| g.neighbors(v).iter().copied().collect())
                .collect(),
            eliminated: vec![false; g.vertex_count()],
        }
    }

    fn fill_in(&self, v: usize) -> usize {
        let nb: Vec<usize> = self.adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            missing += nb[i + 1..]
                .iter()
                .filter(|&&b| !self.adj[a].contains(&b))
                .count();
        }
        missing
    }

    /// Removes `v`, turning its neighbourhood into a clique. Returns the
    /// neighbourhood at the time of elimination.
    fn eliminate(&mut self, v: usize) -> BTreeSet<usize> {
        let nb = std::mem::take(&mut self.adj[v]);
        for &a in &nb {
            self.adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    self.adj[a].insert(b);
                }
            }
        }
        self.eliminated[v] = true;
        nb
    }
}

/// Width of the elimination ordering `order`: the largest neighbourhood met
/// while eliminating in that order.
pub fn elimination_width(g: &Graph, order: &[usize]) -> Result<usize> {
    Ok(decomposition_from_ordering(g, order)?.0)
}

/// Builds the tree decomposition induced by an elimination ordering.
///
/// Vertex `order[i]` contributes the bag `{order[i]} ∪ N⁺`, where `N⁺` is its
/// neighbourhood when eliminated; that bag hangs below the bag of the first
/// vertex of `N⁺` to be eliminated. Returns the width together with the
/// normalized decomposition.
pub fn decomposition_from_ordering(
    g: &Graph,
    order: &[usize],
) -> Result<(usize, TreeDecomposition)> {
    let n = g.vertex_count();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        g.check_vertex(v)?;
        if position[v] != usize::MAX {
            return Err(Error::InvalidInput(format!(
                "vertex {v} repeated in ordering"
            )));
        }
        position[v] = i;
    }
    if order.len() != n {
        return Err(Error::InvalidInput(format!(
            "ordering covers {} of {n} vertices",
            order.len()
        )));
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::new(Vec::new(), Vec::new())?));
    }
    let mut elim = Eliminator::new(g);
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::with_capacity(n - 1);
    let mut width = 0;
    for (i, &v) in order.iter().enumerate() {
        let nb = elim.eliminate(v);
        width = width.max(nb.len());
        if let Some(parent) = nb.iter().map(|&u| position[u]).min() {
            tree_edges.push((i, parent));
        } else if i + 1 < n {
            tree_edges.push((i, i + 1));
        }
        let mut bag = nb;
        bag.insert(v);
        bags.push(bag);
    }
    let td = TreeDecomposition::new(bags, tree_edges)?;
    Ok((width, td.normalized()))
}

/// Greedy min-degree or min-fill elimination. The result is always a valid
/// decomposition; its width is an upper bound on the treewidth.
pub fn heuristic_upper_bound(g: &Graph, strategy: Strategy) -> (usize, TreeDecomposition) {
    let order = greedy_order(g, strategy);
    decomposition_from_ordering(g, &order).expect("greedy order is a permutation")
}

pub(crate) fn greedy_order(g: &Graph, strategy: Strategy) -> Vec<usize> {
    let n = g.vertex_count();
    let mut elim = Eliminator::new(g);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !elim.eliminated[v])
            .min_by_key(|&v| match strategy {
                Strategy::MinDegree => (elim.adj[v].len(), v),
                Strategy::MinFill => (elim.fill_in(v), v),
            })
            .expect("vertices remain");
        elim.eliminate(v);
        order.push(v);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, grid, path};

    #[test]
    fn forests_stay_width_one() {
        let (w, td) = heuristic_upper_bound(&path(10).unwrap(), Strategy::MinDegree);
        assert_eq!(w, 1);
        assert!(td.validate(&path(10).unwrap()).is_ok());
        assert_eq!(td.width().unwrap(), 1);
    }

    #[test]
    fn cliques() {
        for s in [Strategy::MinDegree, Strategy::MinFill] {
            let g = complete(6).unwrap();
            let (w, td) = heuristic_upper_bound(&g, s);
            assert_eq!(w, 5);
            assert_eq!(td.bag_count(), 1);
        }
    }

    #[test]
    fn grid_min_fill_matches_exact() {
        let g = grid(3).unwrap();
        let (w, td) = heuristic_upper_bound(&g, Strategy::MinFill);
        assert_eq!(w, 3);
        assert!(td.validate(&g).is_ok());
    }

    #[test]
    fn disconnected_graph_still_gives_a_tree() {
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        let (w, td) = heuristic_upper_bound(&g, Strategy::MinDegree);
        assert_eq!(w, 1);
        assert!(td.validate(&g).is_ok());
    }

    #[test]
    fn bad_orderings_rejected() {
        let g = cycle(4).unwrap();
        assert!(decomposition_from_ordering(&g, &[0, 1, 2]).is_err());
        assert!(decomposition_from_ordering(&g, &[0, 1, 1, 2]).is_err());
        assert!(decomposition_from_ordering(&g, &[0, 1, 2, 9]).is_err());
        assert_eq!(elimination_width(&g, &[0, 1, 2, 3]).unwrap(), 2);
    }
}
