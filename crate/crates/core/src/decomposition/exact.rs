//! Exact treewidth by dynamic programming over vertex subsets.
//!
//! `TW(S)` is the least width with which the vertices of `S` can be
//! eliminated first, in some order:
//!
//! ```text
//! TW(S ∪ {v}) = min over v of max(TW(S), |Q(S, v)|)
//! ```
//!
//! where `Q(S, v)` is the set of vertices outside `S ∪ {v}` reachable from
//! `v` through `S`. Subsets are processed level by level and only those with
//! `TW(S)` below the current upper bound are kept, which is what makes the
//! search feasible for graphs with a couple dozen vertices.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use super::elimination::{decomposition_from_ordering, greedy_order, Strategy};
use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex-count ceiling for [`exact_treewidth`].
pub const TREEWIDTH_CEILING: usize = 25;

#[derive(Clone, Debug)]
pub struct ExactBudget {
    /// Graphs with more vertices are refused outright.
    pub ceiling: usize,
    /// Maximum number of subset states held in memory.
    pub max_states: usize,
    pub time_limit: Option<Duration>,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            ceiling: TREEWIDTH_CEILING,
            max_states: 40_000_000,
            time_limit: None,
        }
    }
}

impl ExactBudget {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }
}

const NO_VERTEX: u8 = u8::MAX;

/// Exact treewidth of `g` with a witnessing decomposition.
///
/// Fails with [`Error::Resource`] when `g` exceeds the ceiling (hard-capped at
/// 64 vertices) or the search runs out of states or time.
pub fn exact_treewidth(g: &Graph, budget: &ExactBudget) -> Result<(usize, TreeDecomposition)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput("treewidth of the empty graph".into()));
    }
    if n > budget.ceiling.min(64) {
        return Err(Error::Resource(format!(
            "{n} vertices exceeds the exact treewidth ceiling of {}",
            budget.ceiling.min(64)
        )));
    }
    let started = Instant::now();
    let adj = g.adjacency_masks().expect("at most 64 vertices");

    let mut best_order = [Strategy::MinFill, Strategy::MinDegree]
        .into_iter()
        .map(|s| greedy_order(g, s))
        .min_by_key(|o| decomposition_from_ordering(g, o).expect("permutation").0)
        .expect("two strategies");
    let mut upper = decomposition_from_ordering(g, &best_order)?.0;
    let lower = minor_min_width(g);

    if lower < upper {
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut levels: Vec<HashMap<u64, (u8, u8)>> = vec![HashMap::from([(0, (0, NO_VERTEX))])];
        let mut best: Option<(usize, u64)> = None;
        let mut states = 1usize;
        let mut ticks = 0u32;

        'levels: for level in 0..n {
            let mut keys: Vec<(u64, u8)> =
                levels[level].iter().map(|(&s, &(t, _))| (s, t)).collect();
            keys.sort_unstable();
            let mut next: HashMap<u64, (u8, u8)> = HashMap::new();
            for (set, tw) in keys {
                let tw = tw as usize;
                if tw >= upper {
                    continue;
                }
                let remaining = n - level;
                // Eliminating the rest in any order costs at most remaining - 1.
                let finish = tw.max(remaining.saturating_sub(1));
                if finish < upper {
                    upper = finish;
                    best = Some((level, set));
                    if upper <= lower {
                        break 'levels;
                    }
                }
                let mut free = full & !set;
                while free != 0 {
                    let v = free.trailing_zeros() as usize;
                    free &= free - 1;
                    let q = reach_outside(&adj, set, v).count_ones() as usize;
                    let value = tw.max(q);
                    if value >= upper {
                        continue;
                    }
                    let entry = next.entry(set | (1 << v)).or_insert_with(|| {
                        states += 1;
                        (u8::MAX, NO_VERTEX)
                    });
                    if (value as u8, v as u8) < *entry {
                        *entry = (value as u8, v as u8);
                    }
                }
                ticks += 1;
                if states > budget.max_states {
                    return Err(Error::Resource(format!(
                        "exact treewidth exceeded {} states",
                        budget.max_states
                    )));
                }
                if ticks.is_multiple_of(1024) {
                    if let Some(limit) = budget.time_limit {
                        if started.elapsed() > limit {
                            return Err(Error::Resource(format!(
                                "exact treewidth exceeded {} ms",
                                limit.as_millis()
                            )));
                        }
                    }
                }
            }
            levels.push(next);
        }

        if let Some((level, set)) = best {
            best_order = reconstruct(&levels, level, set, n);
        }
    }

    let (width, td) = decomposition_from_ordering(g, &best_order)?;
    debug_assert_eq!(width, upper);
    Ok((width, td))
}

/// `Q(S, v)` as a bitmask.
fn reach_outside(adj: &[u64], set: u64, v: usize) -> u64 {
    let mut component = 1u64 << v;
    let mut frontier = component;
    let mut boundary = 0u64;
    while frontier != 0 {
        let mut around = 0u64;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            around |= adj[u];
        }
        boundary |= around;
        frontier = around & set & !component;
        component |= frontier;
    }
    boundary & !set & !(1u64 << v)
}

fn reconstruct(levels: &[HashMap<u64, (u8, u8)>], level: usize, set: u64, n: usize) -> Vec<usize> {
    let mut prefix = Vec::with_capacity(n);
    let mut current = set;
    for l in (1..=level).rev() {
        let (_, v) = levels[l][&current];
        prefix.push(v as usize);
        current &= !(1u64 << v);
    }
    prefix.reverse();
    prefix.extend((0..n).filter(|&v| set & (1u64 << v) == 0));
    prefix
}

/// Minor-min-width: repeatedly contract a minimum-degree vertex into its
/// minimum-degree neighbour; the largest minimum degree seen is a treewidth
/// lower bound.
pub(crate) fn minor_min_width(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut bound = 0;
    while alive.len() > 1 {
        let v = *alive
            .iter()
            .min_by_key(|&&v| (adj[v].len(), v))
            .expect("non-empty");
        bound = bound.max(adj[v].len());
        let nb = std::mem::take(&mut adj[v]);
        alive.remove(&v);
        let Some(&u) = nb.iter().min_by_key(|&&u| (adj[u].len(), u)) else {
            continue;
        };
        for &x in &nb {
            adj[x].remove(&v);
            if x != u {
                adj[x].insert(u);
                adj[u].insert(x);
            }
        }
    }
    bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, grid, path, path_power};

    fn tw(g: &Graph) -> usize {
        let (w, td) = exact_treewidth(g, &ExactBudget::default()).unwrap();
        assert!(td.validate(g).is_ok());
        assert_eq!(td.width().unwrap(), w);
        w
    }

    #[test]
    fn small_known_values() {
        assert_eq!(tw(&path(5).unwrap()), 1);
        assert_eq!(tw(&grid(3).unwrap()), 3);
        assert_eq!(tw(&complete(5).unwrap()), 4);
        assert_eq!(tw(&cycle(7).unwrap()), 2);
        assert_eq!(tw(&path_power(8, 3).unwrap()), 3);
        assert_eq!(tw(&Graph::empty(3)), 0);
    }

    #[test]
    fn ceiling_is_enforced() {
        let g = path(30).unwrap();
        assert!(matches!(
            exact_treewidth(&g, &ExactBudget::default()),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            exact_treewidth(&path(3).unwrap(), &ExactBudget::default().with_ceiling(2)),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn mmw_is_a_lower_bound() {
        let m = minor_min_width(&grid(4).unwrap());
        assert!((2..=4).contains(&m), "{m}");
        assert_eq!(minor_min_width(&complete(5).unwrap()), 4);
        assert_eq!(minor_min_width(&path(6).unwrap()), 1);
    }

    #[test]
    fn q_set_walks_through_eliminated_vertices() {
        let g = path(5).unwrap();
        let adj = g.adjacency_masks().unwrap();
        // with {1, 2} eliminated, vertex 0 reaches 3 through them
        assert_eq!(reach_outside(&adj, 0b00110, 0), 0b01000);
        assert_eq!(reach_outside(&adj, 0, 2), 0b01010);
    }
}
