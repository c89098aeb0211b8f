use std::sync::OnceLock;

use super::{vertex_connectivity, Graph, VertexSet};
use crate::error::{check_vertex, Error, Result};

/// The cartesian product `G □ H` together with its factors.
///
/// Vertex `(v, w)` with `v ∈ V(G)`, `w ∈ V(H)` has flat id `v * |V(H)| + w`,
/// so the `v`-copy of `H` is the contiguous block `v*|V(H)| .. (v+1)*|V(H)|`
/// and the `w`-copy of `G` is the stride-`|V(H)|` column starting at `w`.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    graph: Graph,
    g: Graph,
    h: Graph,
    connectivity: OnceLock<(usize, usize)>,
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<ProductGraph> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::InvalidInput(
            "cartesian product needs non-empty factors".into(),
        ));
    }
    let (gn, hn) = (g.vertex_count(), h.vertex_count());
    let flat = |v: usize, w: usize| v * hn + w;
    let mut edges = Vec::with_capacity(gn * h.edge_count() + hn * g.edge_count());
    for v in 0..gn {
        edges.extend(h.edges().map(|(x, y)| (flat(v, x), flat(v, y))));
    }
    for w in 0..hn {
        edges.extend(g.edges().map(|(a, b)| (flat(a, w), flat(b, w))));
    }
    Ok(ProductGraph {
        graph: Graph::from_edges(gn * hn, edges)?,
        g: g.clone(),
        h: h.clone(),
        connectivity: OnceLock::new(),
    })
}

impl ProductGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn factor_g(&self) -> &Graph {
        &self.g
    }

    pub fn factor_h(&self) -> &Graph {
        &self.h
    }

    pub fn g_size(&self) -> usize {
        self.g.vertex_count()
    }

    pub fn h_size(&self) -> usize {
        self.h.vertex_count()
    }

    /// `min(|V(G)|, |V(H)|)`: the `n` for which both factors have at least `n` vertices.
    pub fn min_factor_size(&self) -> usize {
        self.g_size().min(self.h_size())
    }

    pub fn flat(&self, v: usize, w: usize) -> usize {
        debug_assert!(v < self.g_size() && w < self.h_size());
        v * self.h_size() + w
    }

    pub fn pair(&self, id: usize) -> (usize, usize) {
        (id / self.h_size(), id % self.h_size())
    }

    /// The `v`-copy of `H`: all `(v, w)`.
    pub fn copy_of_h(&self, v: usize) -> Result<VertexSet> {
        check_vertex(v, self.g_size())?;
        Ok((0..self.h_size()).map(|w| self.flat(v, w)).collect())
    }

    /// The `w`-copy of `G`: all `(v, w)`.
    pub fn copy_of_g(&self, w: usize) -> Result<VertexSet> {
        check_vertex(w, self.h_size())?;
        Ok((0..self.g_size()).map(|v| self.flat(v, w)).collect())
    }

    /// `(κ(G), κ(H))`, computed once. Single-vertex factors report 0.
    pub fn factor_connectivity(&self) -> (usize, usize) {
        *self.connectivity.get_or_init(|| {
            let kappa = |g: &Graph| vertex_connectivity(g).unwrap_or(0);
            (kappa(&self.g), kappa(&self.h))
        })
    }

    /// Checks that both factors are `k`-connected, naming the offending factor.
    pub fn require_k_connected(&self, k: usize) -> Result<()> {
        let (kg, kh) = self.factor_connectivity();
        for (name, kappa, size) in [("G", kg, self.g_size()), ("H", kh, self.h_size())] {
            if kappa < k || size <= k {
                return Err(Error::Precondition(format!(
                    "factor {name} is not {k}-connected (connectivity {kappa}, {size} vertices)"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn small_products() {
        let p = cartesian_product(&path(2).unwrap(), &path(2).unwrap()).unwrap();
        assert_eq!((p.graph().vertex_count(), p.graph().edge_count()), (4, 4));
        assert!(p.graph().neighbors(0).len() == 2 && p.graph().neighbors(3).len() == 2);

        let p = cartesian_product(&path(3).unwrap(), &path(3).unwrap()).unwrap();
        assert_eq!((p.graph().vertex_count(), p.graph().edge_count()), (9, 12));

        let p = cartesian_product(&complete(3).unwrap(), &complete(3).unwrap()).unwrap();
        assert_eq!((p.graph().vertex_count(), p.graph().edge_count()), (9, 18));
    }

    #[test]
    fn copies_follow_flat_layout() {
        let p = cartesian_product(&path(3).unwrap(), &path(3).unwrap()).unwrap();
        assert_eq!(p.copy_of_h(0).unwrap(), [0, 1, 2].into());
        assert_eq!(p.copy_of_g(1).unwrap(), [1, 4, 7].into());
        assert!(p.copy_of_h(3).is_err());
        assert!(p.copy_of_g(3).is_err());
    }

    #[test]
    fn empty_factor_rejected() {
        assert!(matches!(
            cartesian_product(&Graph::empty(0), &path(3).unwrap()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn connectivity_precondition_names_factor() {
        let p = cartesian_product(&cycle(5).unwrap(), &path(5).unwrap()).unwrap();
        assert_eq!(p.factor_connectivity(), (2, 1));
        assert!(p.require_k_connected(1).is_ok());
        let err = p.require_k_connected(2).unwrap_err().to_string();
        assert!(err.contains("factor H"), "{err}");
    }
}
