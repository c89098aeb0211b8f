//! Brambles stored as explicit element lists, their order, and the
//! treewidth lower bound they certify.

mod certificate;
mod hitting_set;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{grid, is_connected_subset, Graph, VertexSet};

pub use certificate::BrambleCertificate;
pub use hitting_set::{minimum_hitting_set, HittingSet, SearchBudget};

/// A finite family of vertex sets of a host graph. Validity (connected,
/// pairwise touching) is checked by [`validate_bramble`], not assumed.
#[derive(Clone, Debug)]
pub struct Bramble {
    host: Arc<Graph>,
    elements: Vec<VertexSet>,
}

impl Bramble {
    /// Deduplicates `elements`, keeping first occurrences in order. Empty
    /// elements are a structural error.
    pub fn new(host: impl Into<Arc<Graph>>, elements: Vec<VertexSet>) -> Result<Self> {
        let host = host.into();
        let mut seen = std::collections::HashSet::new();
        let mut unique = Vec::with_capacity(elements.len());
        for (i, e) in elements.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Structural(format!("bramble element {i} is empty")));
            }
            host.check_subset(&e)?;
            if seen.insert(e.clone()) {
                unique.push(e);
            }
        }
        Ok(Bramble {
            host,
            elements: unique,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `x` and `y` share a vertex or are joined by an edge of `g`.
pub fn touch(x: &VertexSet, y: &VertexSet, g: &Graph) -> Result<bool> {
    g.check_subset(x)?;
    g.check_subset(y)?;
    Ok(touch_unchecked(x, y, g))
}

fn touch_unchecked(x: &VertexSet, y: &VertexSet, g: &Graph) -> bool {
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    small
        .iter()
        .any(|&v| large.contains(&v) || g.neighbors(v).iter().any(|u| large.contains(u)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BrambleReport {
    /// Indices of elements that do not induce connected subgraphs.
    pub disconnected: Vec<usize>,
    /// Index pairs `(i, j)`, `i < j`, that do not touch.
    pub non_touching: Vec<(usize, usize)>,
}

impl BrambleReport {
    pub fn is_ok(&self) -> bool {
        self.disconnected.is_empty() && self.non_touching.is_empty()
    }
}

pub fn validate_bramble(b: &Bramble) -> BrambleReport {
    let g = b.host();
    let disconnected = b
        .elements
        .iter()
        .enumerate()
        .filter(|(_, e)| !is_connected_subset(g, e).expect("checked on construction"))
        .map(|(i, _)| i)
        .collect();
    let mut non_touching = Vec::new();
    for (i, x) in b.elements.iter().enumerate() {
        for (j, y) in b.elements.iter().enumerate().skip(i + 1) {
            if !touch_unchecked(x, y, g) {
                non_touching.push((i, j));
            }
        }
    }
    BrambleReport {
        disconnected,
        non_touching,
    }
}

/// Order of the bramble: the size of a minimum hitting set.
pub fn bramble_order(b: &Bramble, budget: &SearchBudget) -> HittingSet {
    minimum_hitting_set(b.host.vertex_count(), &b.elements, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    /// Treewidth lower bound, `order - 1`. `-1` only for the empty bramble.
    pub value: i64,
    /// False when the hitting-set search ran out of budget; `value` then
    /// rests on the best proven lower bound on the order.
    pub certified: bool,
}

/// Treewidth lower bound from a bramble: a bramble of order `ℓ + 1` forces
/// treewidth at least `ℓ`. The bramble must validate.
pub fn lower_bound_from_bramble(b: &Bramble, budget: &SearchBudget) -> Result<LowerBound> {
    let report = validate_bramble(b);
    if !report.is_ok() {
        return Err(Error::Precondition(format!(
            "not a bramble: {} disconnected element(s), {} non-touching pair(s)",
            report.disconnected.len(),
            report.non_touching.len()
        )));
    }
    let hs = bramble_order(b, budget);
    Ok(LowerBound {
        value: hs.lower_bound as i64 - 1,
        certified: hs.certified_minimum,
    })
}

/// The `ℓ²` crosses (row `i` ∪ column `j`) of the `ℓ x ℓ` grid, in row-major
/// order of `(i, j)`.
pub fn cross_bramble(l: usize) -> Result<Bramble> {
    let host = grid(l)?;
    let elements = (0..l)
        .flat_map(|i| {
            (0..l).map(move |j| {
                (0..l)
                    .map(|c| i * l + c)
                    .chain((0..l).map(|r| r * l + j))
                    .collect::<VertexSet>()
            })
        })
        .collect();
    Bramble::new(host, elements)
}
