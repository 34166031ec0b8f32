//! Directed p-domination in oriented r-uniform hypergraphs.
//!
//! An orientation gives every edge a linear order of its vertices. A set `S`
//! directed p-dominates the orientation when every vertex outside `S` lies in
//! some edge whose first `p` vertices all belong to `S`. This crate computes
//! minimum such sets (exactly and greedily), the maximum of that minimum over
//! all orientations, and the analytic bounds that sandwich it.

pub mod bounds;
pub mod coloring;
mod combinatorics;
pub mod domination;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod orientation;
pub mod verify;
mod vertex_set;

pub type VertexId = usize;

pub use combinatorics::binomial;
pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, InducedSubhypergraph};
pub use orientation::{OrderedEdge, Orientation};
pub use vertex_set::VertexSet;
