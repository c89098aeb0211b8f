//! Linear vertex orderings and bandwidth.
//!
//! Orderings use 1-based positions. For `P_n^k □ P_n^k` two explicit
//! orderings are provided: row-major, and the antidiagonal sweep sorting by
//! `x(n+1) + yn`.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{cartesian_product, path_power, Graph, ProductGraph};

/// A bijection from vertex ids to positions `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    positions: Vec<usize>,
}

impl VertexOrdering {
    pub fn from_positions(positions: Vec<usize>) -> Result<Self> {
        let n = positions.len();
        let mut seen = vec![false; n];
        for (v, &p) in positions.iter().enumerate() {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Structural(format!(
                    "position {p} of vertex {v} breaks the bijection onto 1..={n}"
                )));
            }
        }
        Ok(VertexOrdering { positions })
    }

    /// `sequence[i]` is the vertex placed at position `i + 1`.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self> {
        let n = sequence.len();
        let mut positions = vec![0; n];
        for (i, &v) in sequence.iter().enumerate() {
            if v >= n || positions[v] != 0 {
                return Err(Error::Structural(format!(
                    "vertex {v} is repeated or outside 0..{n}"
                )));
            }
            positions[v] = i + 1;
        }
        Ok(VertexOrdering { positions })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            positions: (1..=n).collect(),
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> usize {
        self.positions[v]
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let n = self.positions.len();
        VertexOrdering {
            positions: self.positions.iter().map(|&p| n + 1 - p).collect(),
        }
    }

    /// Vertices listed by increasing position.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.positions.len()];
        for (v, &p) in self.positions.iter().enumerate() {
            seq[p - 1] = v;
        }
        seq
    }
}

/// Largest `|pos(v) - pos(w)|` over edges `vw`.
pub fn ordering_width(g: &Graph, o: &VertexOrdering) -> Result<usize> {
    if o.len() != g.vertex_count() {
        return Err(Error::Structural(format!(
            "ordering has {} positions for {} vertices",
            o.len(),
            g.vertex_count()
        )));
    }
    Ok(g.edges()
        .map(|(u, v)| o.position(u).abs_diff(o.position(v)))
        .max()
        .unwrap_or(0))
}

fn require_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k < n, got k={k}, n={n}"
        )));
    }
    Ok(())
}

/// `P_n^k □ P_n^k` with its flat layout.
pub fn path_power_square(n: usize, k: usize) -> Result<ProductGraph> {
    require_params(n, k)?;
    let f = path_power(n, k)?;
    cartesian_product(&f, &f)
}

/// `φ(x, y) = (x - 1)n + y` on `P_n^k □ P_n^k`, coordinates 1-based. With
/// flat ids this is the identity.
pub fn row_major_ordering(n: usize, k: usize) -> Result<VertexOrdering> {
    require_params(n, k)?;
    Ok(VertexOrdering::identity(n * n))
}

/// Orders `P_n^k □ P_n^k` by increasing `x(n+1) + yn` (coordinates 1-based).
/// The key equals `n(x + y) + x`, so it is injective: it sweeps
/// antidiagonals, by `x` within each.
pub fn improved_ordering(n: usize, k: usize) -> Result<VertexOrdering> {
    require_params(n, k)?;
    let mut vertices: Vec<usize> = (0..n * n).collect();
    vertices.sort_by_key(|&id| {
        let (x, y) = (id / n + 1, id % n + 1);
        x * (n + 1) + y * n
    });
    VertexOrdering::from_sequence(&vertices)
}

/// Row-major ordering of a product driven by orderings of its factors:
/// `(v, w)` is placed by `(pos_G(v), pos_H(w))` lexicographically.
pub fn product_ordering(
    p: &ProductGraph,
    g_order: &VertexOrdering,
    h_order: &VertexOrdering,
) -> Result<VertexOrdering> {
    if g_order.len() != p.g_size() || h_order.len() != p.h_size() {
        return Err(Error::Structural(
            "factor orderings do not match the product".into(),
        ));
    }
    let hn = p.h_size();
    let positions = (0..p.graph().vertex_count())
        .map(|id| {
            let (v, w) = p.pair(id);
            (g_order.position(v) - 1) * hn + h_order.position(w)
        })
        .collect();
    VertexOrdering::from_positions(positions)
}

/// Default vertex-count ceiling for [`exact_bandwidth`].
pub const BANDWIDTH_CEILING: usize = 12;

#[derive(Clone, Debug)]
pub struct BandwidthBudget {
    pub ceiling: usize,
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for BandwidthBudget {
    fn default() -> Self {
        BandwidthBudget {
            ceiling: BANDWIDTH_CEILING,
            max_nodes: 100_000_000,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandwidthResult {
    pub width: usize,
    /// False when the search ran out of budget; `width` is then the best
    /// ordering found, not necessarily optimal.
    pub certified: bool,
    pub lower_bound: usize,
    #[serde(skip)]
    pub ordering: VertexOrdering,
}

struct Layout<'a> {
    g: &'a Graph,
    bound: usize,
    position: Vec<usize>,
    sequence: Vec<usize>,
    nodes: u64,
    budget: &'a BandwidthBudget,
    started: Instant,
}

struct OutOfBudget;

impl Layout<'_> {
    /// Every unplaced vertex must land within `bound` of its placed
    /// neighbours; sorting those deadlines, the `i`-th must allow slot
    /// `next + i`.
    fn deadlines_feasible(&self) -> bool {
        let next = self.sequence.len() + 1;
        let mut deadlines: Vec<usize> = (0..self.g.vertex_count())
            .filter(|&u| self.position[u] == 0)
            .filter_map(|u| {
                self.g
                    .neighbors(u)
                    .iter()
                    .filter(|&&w| self.position[w] != 0)
                    .map(|&w| self.position[w] + self.bound)
                    .min()
            })
            .collect();
        deadlines.sort_unstable();
        deadlines.iter().enumerate().all(|(i, &d)| d >= next + i)
    }

    fn place(&mut self) -> Result<bool, OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(OutOfBudget);
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() > limit {
                    return Err(OutOfBudget);
                }
            }
        }
        let n = self.g.vertex_count();
        if self.sequence.len() == n {
            return Ok(true);
        }
        let slot = self.sequence.len() + 1;
        for v in 0..n {
            if self.position[v] != 0 {
                continue;
            }
            let fits = self
                .g
                .neighbors(v)
                .iter()
                .all(|&w| self.position[w] == 0 || slot - self.position[w] <= self.bound);
            if !fits {
                continue;
            }
            self.position[v] = slot;
            self.sequence.push(v);
            if self.deadlines_feasible() && self.place()? {
                return Ok(true);
            }
            self.sequence.pop();
            self.position[v] = 0;
        }
        Ok(false)
    }
}

/// Exact bandwidth by branch and bound over left-to-right placements, trying
/// each width from `⌈Δ/2⌉` upward.
pub fn exact_bandwidth(g: &Graph, budget: &BandwidthBudget) -> Result<BandwidthResult> {
    let n = g.vertex_count();
    if n > budget.ceiling {
        return Err(Error::Resource(format!(
            "{n} vertices exceeds the exact bandwidth ceiling of {}",
            budget.ceiling
        )));
    }
    if g.edge_count() == 0 {
        return Ok(BandwidthResult {
            width: 0,
            certified: true,
            lower_bound: 0,
            ordering: VertexOrdering::identity(n),
        });
    }
    let started = Instant::now();
    let identity = VertexOrdering::identity(n);
    let fallback = ordering_width(g, &identity)?;
    let mut bound = g.max_degree().div_ceil(2).max(1);
    let mut nodes = 0;
    while bound < fallback {
        let mut layout = Layout {
            g,
            bound,
            position: vec![0; n],
            sequence: Vec::with_capacity(n),
            nodes,
            budget,
            started,
        };
        match layout.place() {
            Ok(true) => {
                let ordering = VertexOrdering::from_sequence(&layout.sequence)?;
                debug_assert_eq!(ordering_width(g, &ordering)?, bound);
                return Ok(BandwidthResult {
                    width: bound,
                    certified: true,
                    lower_bound: bound,
                    ordering,
                });
            }
            Ok(false) => {
                nodes = layout.nodes;
                bound += 1;
            }
            Err(OutOfBudget) => {
                return Ok(BandwidthResult {
                    width: fallback,
                    certified: false,
                    lower_bound: bound,
                    ordering: identity,
                });
            }
        }
    }
    Ok(BandwidthResult {
        width: fallback,
        certified: true,
        lower_bound: fallback,
        ordering: identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, grid, path};

    #[test]
    fn widths_of_simple_orderings() {
        let p5 = path(5).unwrap();
        assert_eq!(
            ordering_width(&p5, &VertexOrdering::identity(5)).unwrap(),
            1
        );
        let c4 = cycle(4).unwrap();
        assert_eq!(
            ordering_width(&c4, &VertexOrdering::identity(4)).unwrap(),
            3
        );
        let zigzag = VertexOrdering::from_sequence(&[0, 1, 3, 2]).unwrap();
        assert_eq!(ordering_width(&c4, &zigzag).unwrap(), 2);
        assert_eq!(
            ordering_width(&grid(3).unwrap(), &VertexOrdering::identity(9)).unwrap(),
            3
        );
    }

    #[test]
    fn orderings_must_be_bijections() {
        assert!(VertexOrdering::from_positions(vec![1, 1, 2]).is_err());
        assert!(VertexOrdering::from_positions(vec![0, 1, 2]).is_err());
        assert!(VertexOrdering::from_positions(vec![1, 2, 4]).is_err());
        assert!(VertexOrdering::from_sequence(&[0, 0]).is_err());
        assert!(ordering_width(&path(3).unwrap(), &VertexOrdering::identity(2)).is_err());
    }

    #[test]
    fn row_major_widths() {
        let w = |n, k| {
            let p = path_power_square(n, k).unwrap();
            ordering_width(p.graph(), &row_major_ordering(n, k).unwrap()).unwrap()
        };
        assert_eq!(w(3, 1), 3);
        assert_eq!(w(5, 2), 10);
        assert_eq!(w(2, 1), 2);
        assert!(row_major_ordering(3, 3).is_err());
    }

    #[test]
    fn improved_ordering_keys() {
        let o = improved_ordering(6, 2).unwrap();
        assert_eq!(o.len(), 36);
        // first vertex is (1,1), then (1,2), then (2,1)
        assert_eq!(&o.sequence()[..3], &[0, 1, 6]);
    }

    #[test]
    fn improved_ordering_widths() {
        let w = |n, k| {
            let p = path_power_square(n, k).unwrap();
            ordering_width(p.graph(), &improved_ordering(n, k).unwrap()).unwrap()
        };
        // values from a standalone brute-force script
        assert_eq!(w(3, 1), 3);
        assert_eq!(w(5, 2), 10);
        assert_eq!(w(4, 3), 11);
        assert_eq!(w(5, 4), 18);
        assert_eq!(w(12, 11), 107);
    }

    #[test]
    fn exact_bandwidth_small() {
        let b = BandwidthBudget::default();
        assert_eq!(exact_bandwidth(&path(6).unwrap(), &b).unwrap().width, 1);
        assert_eq!(exact_bandwidth(&cycle(6).unwrap(), &b).unwrap().width, 2);
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let r = exact_bandwidth(&star, &b).unwrap();
        assert_eq!(r.width, 2);
        assert!(r.certified);
        assert_eq!(ordering_width(&star, &r.ordering).unwrap(), 2);
        assert_eq!(exact_bandwidth(&Graph::empty(3), &b).unwrap().width, 0);
        assert!(exact_bandwidth(&path(13).unwrap(), &b).is_err());
    }
}
