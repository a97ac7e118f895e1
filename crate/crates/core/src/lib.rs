//! Turán numbers of vertex-disjoint cliques in complete multipartite
//! graphs.
//!
//! The library answers, exactly, how many edges a subgraph of
//! K_{n₁,…,n_r} can have before it is forced to contain k pairwise
//! vertex-disjoint r-cliques — and then distrusts itself: every closed
//! formula is backed by an explicit extremal construction, a clique-packing
//! detector that certifies freeness, counting identities checked by brute
//! enumeration, and an exact branch-and-bound oracle that recomputes the
//! numbers from nothing but the definition.

pub mod bits;
pub mod cache;
pub mod construct;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod identities;
pub mod oracle;
pub mod packing;
pub mod sample;
pub mod text;

pub use error::{Error, Result};
pub use graph::{HostSpec, MultipartiteGraph, PartSizes, UnionAlignment, VertexId};
