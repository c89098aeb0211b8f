//! Exact minimum hitting set by iterative-deepening branch and bound.
//!
//! For each target size `r`, starting at the disjoint-packing lower bound,
//! a depth-first search decides whether some `r` vertices hit every
//! element. Each node branches on a smallest unhit element, trying its
//! vertices by decreasing number of unhit elements they cover; a vertex that
//! has been fully explored is excluded from its later siblings. A node is
//! pruned when the unhit elements contain more pairwise disjoint members
//! than the remaining allowance.
//!
//! Once the optimum is known, a second pass fixes the lexicographically least
//! minimum hitting set so the result does not depend on search order.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::graph::VertexSet;

#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 200_000_000,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = nodes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingSet {
    pub vertices: VertexSet,
    /// No smaller set hits every element.
    pub certified_minimum: bool,
    /// Proven lower bound on the minimum size. Equals `vertices.len()` when
    /// certified.
    pub lower_bound: usize,
}

struct Exhausted;

struct Solver<'a> {
    elements: &'a [Vec<usize>],
    containing: Vec<Vec<usize>>,
    hits: Vec<u32>,
    allowed: Vec<bool>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: &'a SearchBudget,
    started: Instant,
}

impl<'a> Solver<'a> {
    fn new(n: usize, elements: &'a [Vec<usize>], budget: &'a SearchBudget) -> Self {
        let mut containing = vec![Vec::new(); n];
        for (i, e) in elements.iter().enumerate() {
            for &v in e {
                containing[v].push(i);
            }
        }
        Solver {
            elements,
            containing,
            hits: vec![0; elements.len()],
            allowed: vec![true; n],
            chosen: Vec::new(),
            nodes: 0,
            budget,
            started: Instant::now(),
        }
    }

    fn choose(&mut self, v: usize) {
        self.chosen.push(v);
        for &e in &self.containing[v] {
            self.hits[e] += 1;
        }
    }

    fn unchoose(&mut self) {
        let v = self.chosen.pop().expect("non-empty");
        for &e in &self.containing[v] {
            self.hits[e] -= 1;
        }
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Exhausted);
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() > limit {
                    return Err(Exhausted);
                }
            }
        }
        Ok(())
    }

    fn allowed_in(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.elements[e]
            .iter()
            .copied()
            .filter(|&v| self.allowed[v])
    }

    /// Greedy packing of pairwise disjoint unhit elements, smallest first.
    /// `None` if some unhit element has no allowed vertex left.
    fn packing_bound(&self, unhit: &[usize]) -> Option<usize> {
        let mut by_size: Vec<(usize, usize)> = Vec::with_capacity(unhit.len());
        for &e in unhit {
            let size = self.allowed_in(e).count();
            if size == 0 {
                return None;
            }
            by_size.push((size, e));
        }
        by_size.sort_unstable();
        let mut used = vec![false; self.allowed.len()];
        let mut count = 0;
        for (_, e) in by_size {
            if self.allowed_in(e).all(|v| !used[v]) {
                self.allowed_in(e).for_each(|v| used[v] = true);
                count += 1;
            }
        }
        Some(count)
    }

    /// Whether `allowance` more allowed vertices can hit every unhit element.
    /// On success the solution is left in `chosen`.
    fn extend(&mut self, allowance: usize) -> Result<bool, Exhausted> {
        self.tick()?;
        let unhit: Vec<usize> = (0..self.elements.len())
            .filter(|&e| self.hits[e] == 0)
            .collect();
        if unhit.is_empty() {
            return Ok(true);
        }
        if allowance == 0 {
            return Ok(false);
        }
        match self.packing_bound(&unhit) {
            Some(lb) if lb <= allowance => {}
            _ => return Ok(false),
        }
        let branch = *unhit
            .iter()
            .min_by_key(|&&e| (self.allowed_in(e).count(), e))
            .expect("non-empty");
        let mut candidates: Vec<usize> = self.allowed_in(branch).collect();
        candidates.sort_by_key(|&v| {
            let cover = self.containing[v]
                .iter()
                .filter(|&&e| self.hits[e] == 0)
                .count();
            (std::cmp::Reverse(cover), v)
        });
        let mut excluded = Vec::new();
        let mut found = false;
        for v in candidates {
            self.choose(v);
            let result = self.extend(allowance - 1);
            if matches!(result, Ok(true)) {
                found = true;
                break;
            }
            self.unchoose();
            if result.is_err() {
                excluded.iter().for_each(|&u| self.allowed[u] = true);
                return result;
            }
            self.allowed[v] = false;
            excluded.push(v);
        }
        excluded.iter().for_each(|&u| self.allowed[u] = true);
        Ok(found)
    }

    fn greedy(&self) -> Vec<usize> {
        let mut hit = vec![false; self.elements.len()];
        let mut picked = Vec::new();
        while let Some(v) = (0..self.allowed.len())
            .map(|v| (self.containing[v].iter().filter(|&&e| !hit[e]).count(), v))
            .filter(|&(c, _)| c > 0)
            .max_by_key(|&(c, v)| (c, std::cmp::Reverse(v)))
            .map(|(_, v)| v)
        {
            picked.push(v);
            self.containing[v].iter().for_each(|&e| hit[e] = true);
        }
        picked
    }
}

/// Minimum set of vertices in `0..n` meeting every element.
///
/// Elements must be non-empty subsets of `0..n`. On budget exhaustion the
/// greedy solution is returned uncertified, with the best proven lower bound.
pub fn minimum_hitting_set(n: usize, elements: &[VertexSet], budget: &SearchBudget) -> HittingSet {
    let lists: Vec<Vec<usize>> = elements
        .iter()
        .map(|e| e.iter().copied().collect())
        .collect();
    debug_assert!(lists
        .iter()
        .all(|e| !e.is_empty() && e.iter().all(|&v| v < n)));
    let mut solver = Solver::new(n, &lists, budget);
    let greedy = solver.greedy();
    let all: Vec<usize> = (0..lists.len()).collect();
    let mut lower = solver.packing_bound(&all).unwrap_or(0);

    let mut optimum: Option<Vec<usize>> = None;
    while lower < greedy.len() {
        match solver.extend(lower) {
            Ok(true) => {
                optimum = Some(std::mem::take(&mut solver.chosen));
                break;
            }
            Ok(false) => lower += 1,
            Err(Exhausted) => {
                return HittingSet {
                    vertices: greedy.into_iter().collect(),
                    certified_minimum: false,
                    lower_bound: lower,
                };
            }
        }
    }
    let optimum = optimum.unwrap_or(greedy);
    let size = optimum.len();
    let canonical = lexicographically_least(&mut solver, size).unwrap_or(optimum);
    HittingSet {
        vertices: canonical.into_iter().collect(),
        certified_minimum: true,
        lower_bound: size,
    }
}

/// Fixes vertices one at a time, each the smallest id that still admits a
/// hitting set of the given size using only larger ids afterwards.
fn lexicographically_least(solver: &mut Solver<'_>, size: usize) -> Option<Vec<usize>> {
    let n = solver.allowed.len();
    solver.chosen.clear();
    solver.hits.iter_mut().for_each(|h| *h = 0);
    let mut fixed = Vec::with_capacity(size);
    let mut start = 0;
    while fixed.len() < size && solver.hits.contains(&0) {
        let mut placed = None;
        for v in start..n {
            // allowed: fixed vertices (already chosen) and ids above v
            for u in 0..n {
                solver.allowed[u] = u > v;
            }
            solver.choose(v);
            let depth = solver.chosen.len();
            let ok = solver.extend(size - fixed.len() - 1).ok()?;
            while solver.chosen.len() > depth {
                solver.unchoose();
            }
            if ok {
                placed = Some(v);
                break;
            }
            solver.unchoose();
        }
        let v = placed?;
        fixed.push(v);
        start = v + 1;
    }
    solver.allowed.iter_mut().for_each(|a| *a = true);
    Some(fixed)
}
