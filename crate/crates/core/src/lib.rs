//! Treewidth bounds for cartesian products of graphs.
//!
//! Vertices are `0..n`. A product `G □ H` stores `(v, w)` at
//! `v * |V(H)| + w`.

pub mod bramble;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod io;
pub mod ordering;
pub mod product_bramble;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{cartesian_product, Family, Graph, ProductGraph, VertexSet};
