//! The bramble of a product of two `k`-connected graphs and the machinery
//! that certifies its order.
//!
//! An element is described by an [`ElementSpec`]: `2k - 1` vertices `S` of
//! `G`, `2k - 1` vertices `T` of `H`, and a set of deleted vertices. The
//! element itself is the union of the copies `H_v` (`v ∈ S`) and `G_w`
//! (`w ∈ T`) minus the deleted vertices, where every one of those copies may
//! lose at most `k - 1` of its vertices.
//!
//! The family is exponentially large and is never enumerated except on tiny
//! instances. Its order is certified instead by [`refute_hitting_set`], which
//! turns any vertex set that is too small into an element avoiding it.

mod refute;
mod sample;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_connected_subset, ProductGraph, VertexSet};

pub use refute::{
    certify_product_bound, check_refutation, refute_hitting_set, Axis, CertificationMethod,
    ProductCertificate, Refutation, RefutationOutcome,
};
pub use sample::{materialize_family, sample_elements, DeletionPolicy};

/// One copy of a factor inside the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CopyId {
    /// `H_v`, the copy of `H` at `v ∈ V(G)`.
    OfH(usize),
    /// `G_w`, the copy of `G` at `w ∈ V(H)`.
    OfG(usize),
}

impl CopyId {
    pub fn contains(self, p: &ProductGraph, flat: usize) -> bool {
        let (v, w) = p.pair(flat);
        match self {
            CopyId::OfH(x) => v == x,
            CopyId::OfG(y) => w == y,
        }
    }

    pub fn vertices(self, p: &ProductGraph) -> Result<VertexSet> {
        match self {
            CopyId::OfH(v) => p.copy_of_h(v),
            CopyId::OfG(w) => p.copy_of_g(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementSpec {
    pub k: usize,
    /// Vertices of `G` whose copies of `H` are used.
    pub s: VertexSet,
    /// Vertices of `H` whose copies of `G` are used.
    pub t: VertexSet,
    /// Deleted flat vertices, filed under the copy they are taken from.
    pub deletions: BTreeMap<CopyId, VertexSet>,
}

impl ElementSpec {
    pub fn new(k: usize, s: VertexSet, t: VertexSet) -> Self {
        ElementSpec {
            k,
            s,
            t,
            deletions: BTreeMap::new(),
        }
    }

    pub fn with_deletion(mut self, copy: CopyId, flat: usize) -> Self {
        self.deletions.entry(copy).or_default().insert(flat);
        self
    }

    pub fn copies(&self) -> impl Iterator<Item = CopyId> + '_ {
        self.s
            .iter()
            .map(|&v| CopyId::OfH(v))
            .chain(self.t.iter().map(|&w| CopyId::OfG(w)))
    }

    /// All deleted vertices.
    pub fn deleted(&self) -> VertexSet {
        self.deletions.values().flatten().copied().collect()
    }

    /// Checks sizes, ranges, and that each copy loses at most `k - 1`
    /// vertices. A vertex in `S × T` lies in two copies and counts against both.
    pub fn check(&self, p: &ProductGraph) -> Result<()> {
        let k = self.k;
        if k == 0 {
            return Err(Error::Spec("k must be at least 1".into()));
        }
        let size = 2 * k - 1;
        if self.s.len() != size || self.t.len() != size {
            return Err(Error::Spec(format!(
                "|S| = {} and |T| = {} must both equal 2k-1 = {size}",
                self.s.len(),
                self.t.len()
            )));
        }
        if let Some(&v) = self.s.iter().find(|&&v| v >= p.g_size()) {
            return Err(Error::Spec(format!("S contains {v}, outside V(G)")));
        }
        if let Some(&w) = self.t.iter().find(|&&w| w >= p.h_size()) {
            return Err(Error::Spec(format!("T contains {w}, outside V(H)")));
        }
        for (&copy, deleted) in &self.deletions {
            let used = match copy {
                CopyId::OfH(v) => self.s.contains(&v),
                CopyId::OfG(w) => self.t.contains(&w),
            };
            if !used {
                return Err(Error::Spec(format!(
                    "deletions filed under unused copy {copy:?}"
                )));
            }
            if let Some(&x) = deleted
                .iter()
                .find(|&&x| x >= p.graph().vertex_count() || !copy.contains(p, x))
            {
                return Err(Error::Spec(format!("vertex {x} is not inside {copy:?}")));
            }
        }
        let all = self.deleted();
        for copy in self.copies() {
            let lost = all.iter().filter(|&&x| copy.contains(p, x)).count();
            if lost > k - 1 {
                return Err(Error::Spec(format!(
                    "{copy:?} loses {lost} vertices, budget is k-1 = {}",
                    k - 1
                )));
            }
        }
        Ok(())
    }
}

/// `k(n - 2k + 2) - 1`, the treewidth lower bound for products of two
/// `k`-connected graphs with at least `n` vertices each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremBound {
    pub k: usize,
    pub n: usize,
    pub value: i64,
    /// `n <= 2k - 2`: the statement holds trivially and carries no information.
    pub vacuous: bool,
}

impl TheoremBound {
    /// The bound clamped at zero, for display.
    pub fn clamped(&self) -> usize {
        self.value.max(0) as usize
    }

    /// `k(n - 2k + 2)`, the certified bramble order.
    pub fn order(&self) -> i64 {
        self.value + 1
    }
}

pub fn theorem_bound(k: usize, n: usize) -> TheoremBound {
    let (ki, ni) = (k as i64, n as i64);
    TheoremBound {
        k,
        n,
        value: ki * (ni - 2 * ki + 2) - 1,
        vacuous: ni <= 2 * ki - 2,
    }
}

/// Checks the hypotheses for building elements on `p` with parameter `k`.
pub(crate) fn check_preconditions(p: &ProductGraph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if p.min_factor_size() < 2 * k - 1 {
        return Err(Error::Precondition(format!(
            "both factors need at least 2k-1 = {} vertices, smallest has {}",
            2 * k - 1,
            p.min_factor_size()
        )));
    }
    p.require_k_connected(k)
}

/// Union of the copies named by `spec`, minus its deleted vertices.
pub(crate) fn element_vertices(p: &ProductGraph, spec: &ElementSpec) -> VertexSet {
    let deleted = spec.deleted();
    let mut x = VertexSet::new();
    for &v in &spec.s {
        x.extend((0..p.h_size()).map(|w| p.flat(v, w)));
    }
    for &w in &spec.t {
        x.extend((0..p.g_size()).map(|v| p.flat(v, w)));
    }
    x.retain(|id| !deleted.contains(id));
    x
}

/// Builds the element described by `spec` and confirms it is connected.
pub fn make_element(p: &ProductGraph, spec: &ElementSpec) -> Result<VertexSet> {
    spec.check(p)?;
    check_preconditions(p, spec.k)?;
    let x = element_vertices(p, spec);
    if !is_connected_subset(p.graph(), &x)? {
        return Err(Error::Structural(format!(
            "element for S={:?}, T={:?} is disconnected",
            spec.s, spec.t
        )));
    }
    Ok(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QReport {
    pub min_degree: usize,
    pub connected: bool,
    pub edges: usize,
}

/// The bipartite graph `Q` on `S ∪ T` with an edge `vw` whenever `(v, w)`
/// survives in `x`. Every vertex keeps degree at least `k`, which forces
/// `Q` to be connected.
pub fn q_graph_check(p: &ProductGraph, spec: &ElementSpec, x: &VertexSet) -> QReport {
    let s: Vec<usize> = spec.s.iter().copied().collect();
    let t: Vec<usize> = spec.t.iter().copied().collect();
    // nodes 0..|S| are S, |S|..|S|+|T| are T
    let mut adj = vec![Vec::new(); s.len() + t.len()];
    for (i, &v) in s.iter().enumerate() {
        for (j, &w) in t.iter().enumerate() {
            if x.contains(&p.flat(v, w)) {
                adj[i].push(s.len() + j);
                adj[s.len() + j].push(i);
            }
        }
    }
    let min_degree = adj.iter().map(Vec::len).min().unwrap_or(0);
    let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    if !adj.is_empty() {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    QReport {
        min_degree,
        connected: !adj.is_empty() && seen.iter().all(|&s| s),
        edges,
    }
}

/// A vertex of `S_a × T_b` that survives in both elements, least id first.
///
/// At most `(2k-1)(k-1)` of the `(2k-1)²` candidates are deleted by each
/// side, so one always survives.
pub fn touching_certificate(p: &ProductGraph, a: &ElementSpec, b: &ElementSpec) -> Result<usize> {
    a.check(p)?;
    b.check(p)?;
    if a.k != b.k {
        return Err(Error::InvalidParameter(format!(
            "elements use different k ({} and {})",
            a.k, b.k
        )));
    }
    let (da, db) = (a.deleted(), b.deleted());
    let mut candidates: Vec<usize> =
        a.s.iter()
            .flat_map(|&v| b.t.iter().map(move |&w| p.flat(v, w)))
            .collect();
    candidates.sort_unstable();
    candidates
        .into_iter()
        .find(|x| !da.contains(x) && !db.contains(x))
        .ok_or_else(|| {
            Error::Structural("no common vertex in S_a x T_b; deletion budget violated".into())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, path, path_power};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn bound_values() {
        assert_eq!(theorem_bound(1, 5).value, 4);
        assert_eq!(theorem_bound(2, 5).value, 5);
        let b = theorem_bound(3, 4);
        assert_eq!(b.value, -1);
        assert!(b.vacuous);
        assert_eq!(b.clamped(), 0);
        assert!(!theorem_bound(2, 3).vacuous);
        assert_eq!(theorem_bound(2, 6).order(), 8);
    }

    #[test]
    fn k1_element_is_a_cross() {
        let p = cartesian_product(&path(5).unwrap(), &path(5).unwrap()).unwrap();
        let spec = ElementSpec::new(1, set(&[2]), set(&[3]));
        let x = make_element(&p, &spec).unwrap();
        assert_eq!(x.len(), 9);
        let expected: VertexSet = (10..15).chain([3, 8, 18, 23]).collect();
        assert_eq!(x, expected);
        let q = q_graph_check(&p, &spec, &x);
        assert_eq!(
            q,
            QReport {
                min_degree: 1,
                connected: true,
                edges: 1
            }
        );
    }

    #[test]
    fn k2_element_with_one_deletion() {
        let f = path_power(5, 2).unwrap();
        let p = cartesian_product(&f, &f).unwrap();
        let spec = ElementSpec::new(2, set(&[0, 2, 4]), set(&[1, 2, 3]))
            .with_deletion(CopyId::OfH(2), p.flat(2, 0));
        let x = make_element(&p, &spec).unwrap();
        assert_eq!(x.len(), 3 * 5 + 3 * 5 - 9 - 1);
    }

    #[test]
    fn full_k2_q_graph_is_complete_bipartite() {
        let f = path_power(5, 2).unwrap();
        let p = cartesian_product(&f, &f).unwrap();
        let spec = ElementSpec::new(2, set(&[0, 1, 2]), set(&[0, 1, 2]));
        let x = make_element(&p, &spec).unwrap();
        let q = q_graph_check(&p, &spec, &x);
        assert_eq!(
            q,
            QReport {
                min_degree: 3,
                connected: true,
                edges: 9
            }
        );
    }

    #[test]
    fn spec_errors() {
        let f = path_power(5, 2).unwrap();
        let p = cartesian_product(&f, &f).unwrap();
        let over = ElementSpec::new(2, set(&[0, 1, 2]), set(&[0, 1, 2]))
            .with_deletion(CopyId::OfH(1), p.flat(1, 3))
            .with_deletion(CopyId::OfH(1), p.flat(1, 4));
        assert!(matches!(make_element(&p, &over), Err(Error::Spec(_))));
        // one listed per copy but both land in column 0 twice
        let crossing = ElementSpec::new(2, set(&[0, 1, 2]), set(&[0, 1, 2]))
            .with_deletion(CopyId::OfH(0), p.flat(0, 0))
            .with_deletion(CopyId::OfH(1), p.flat(1, 0));
        assert!(matches!(crossing.check(&p), Err(Error::Spec(_))));
        let wrong_size = ElementSpec::new(2, set(&[0, 1]), set(&[0, 1, 2]));
        assert!(matches!(make_element(&p, &wrong_size), Err(Error::Spec(_))));
        let outside = ElementSpec::new(2, set(&[0, 1, 2]), set(&[0, 1, 2]))
            .with_deletion(CopyId::OfH(0), p.flat(3, 0));
        assert!(matches!(outside.check(&p), Err(Error::Spec(_))));
        let unused = ElementSpec::new(2, set(&[0, 1, 2]), set(&[0, 1, 2]))
            .with_deletion(CopyId::OfH(4), p.flat(4, 0));
        assert!(matches!(unused.check(&p), Err(Error::Spec(_))));
    }

    #[test]
    fn insufficient_connectivity_is_a_precondition_error() {
        let p = cartesian_product(&path(5).unwrap(), &path(5).unwrap()).unwrap();
        let spec = ElementSpec::new(2, set(&[0, 1, 2]), set(&[0, 1, 2]));
        assert!(matches!(
            make_element(&p, &spec),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn touching_vertices() {
        let f = path_power(5, 2).unwrap();
        let p = cartesian_product(&f, &f).unwrap();
        let a = ElementSpec::new(2, set(&[0, 1, 2]), set(&[2, 3, 4]))
            .with_deletion(CopyId::OfH(0), p.flat(0, 0));
        let b = ElementSpec::new(2, set(&[2, 3, 4]), set(&[0, 1, 2]))
            .with_deletion(CopyId::OfG(1), p.flat(1, 1));
        let x = touching_certificate(&p, &a, &b).unwrap();
        assert_eq!(x, p.flat(0, 1));
        let xa = make_element(&p, &a).unwrap();
        let xb = make_element(&p, &b).unwrap();
        assert!(xa.contains(&x) && xb.contains(&x));
        assert_eq!(touching_certificate(&p, &a, &a).unwrap(), p.flat(0, 2));

        let k1 = cartesian_product(&path(4).unwrap(), &path(4).unwrap()).unwrap();
        let c = ElementSpec::new(1, set(&[1]), set(&[3]));
        let d = ElementSpec::new(1, set(&[2]), set(&[0]));
        assert_eq!(touching_certificate(&k1, &c, &d).unwrap(), k1.flat(1, 0));
    }
}
