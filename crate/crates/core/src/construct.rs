//! Extremal and conjectured-extremal constructions, certified.
//!
//! A certificate pairs a constructed graph with its recounted edge total
//! and, for small hosts, an eager freeness verdict from the detector.

use crate::error::{Error, Result};
use crate::formulas::{closed_form, four_partite_triangle_lower_bound};
use crate::graph::{HostSpec, MultipartiteGraph, PartSizes, VertexId};
use crate::packing;

/// Hosts up to this many vertices get their freeness verified eagerly at
/// construction time; larger ones on demand.
const EAGER_FREENESS_LIMIT: usize = 40;

/// A constructed graph together with the claim it certifies: exactly
/// `claimed_edges` edges and no k disjoint r-cliques.
#[derive(Debug, Clone)]
pub struct ConstructionCertificate {
    graph: MultipartiteGraph,
    claimed_edges: u64,
    k: u64,
    r: usize,
    free_verified: Option<bool>,
}

impl ConstructionCertificate {
    /// Certify an arbitrary graph against a forbidden (k, r) packing.
    /// The edge claim is recounted from the graph, never trusted.
    pub fn certify(graph: MultipartiteGraph, r: usize, k: u64) -> Self {
        let claimed_edges = graph.edge_count() as u64;
        let free_verified = if graph.total_vertices() <= EAGER_FREENESS_LIMIT {
            Some(!packing::contains_clique_packing(&graph, r, k))
        } else {
            None
        };
        ConstructionCertificate {
            graph,
            claimed_edges,
            k,
            r,
            free_verified,
        }
    }

    pub fn graph(&self) -> &MultipartiteGraph {
        &self.graph
    }

    pub fn claimed_edges(&self) -> u64 {
        self.claimed_edges
    }

    /// The forbidden configuration (k, r).
    pub fn forbidden(&self) -> (u64, usize) {
        (self.k, self.r)
    }

    /// Freeness verdict if it has been computed.
    pub fn free_verified(&self) -> Option<bool> {
        self.free_verified
    }

    /// Freeness verdict, running the detector now if still pending.
    pub fn ensure_freeness(&mut self) -> bool {
        *self
            .free_verified
            .get_or_insert_with(|| !packing::contains_clique_packing(&self.graph, self.r, self.k))
    }
}

/// The extremal graph for ex(K_{n₁,…,n_r}, kK_r): all pairs of parts
/// complete except V₁V₂, which carries exactly a complete bipartite graph
/// between the first k−1 vertices of V₁ and all of V₂.
///
/// Requires 1 ≤ k ≤ n₁ ≤ … ≤ n_r and r ≥ 3 (sizes are canonicalized
/// first). Which k−1 vertices host the V₁V₂ edges is immaterial up to
/// isomorphism; the first by index are used.
pub fn extremal_construction(spec: &HostSpec) -> Result<ConstructionCertificate> {
    let canonical = spec.canonicalized();
    let parts = canonical.parts();
    let k = canonical.k();
    let r = canonical.r();
    if r < 3 {
        return Err(Error::OutOfRange(format!("violated r >= 3: r={r}")));
    }
    let n1 = parts.sizes()[0] as u64;
    if k > n1 {
        return Err(Error::OutOfRange(format!(
            "violated k <= n_1: k={k}, n_1={n1}"
        )));
    }

    let mut graph = MultipartiteGraph::complete(parts);
    for i in 0..parts.sizes()[0] {
        for j in 0..parts.sizes()[1] {
            graph = graph.without_edge(VertexId::new(0, i), VertexId::new(1, j))?;
        }
    }
    for i in 0..(k - 1) as usize {
        for j in 0..parts.sizes()[1] {
            graph = graph.with_edge(VertexId::new(0, i), VertexId::new(1, j))?;
        }
    }

    let cert = ConstructionCertificate::certify(graph, r, k);
    let expected = closed_form(parts, k)? as u64;
    if cert.claimed_edges() != expected {
        return Err(Error::Precondition(format!(
            "construction produced {} edges, formula says {expected}",
            cert.claimed_edges()
        )));
    }
    Ok(cert)
}

/// The 4-partite kK₃-free construction behind the lower bound
/// (n₁+n₂+n₃)n₄ + (k−1)n₃: V₄ joined to everything, plus a complete
/// bipartite graph between k−1 vertices drawn from V₁∪V₂ (V₁ first) and
/// all of V₃. Requires 1 ≤ k ≤ n₁+n₂+1 so the isolated block is
/// non-negative.
pub fn four_partite_triangle_construction(
    parts: &PartSizes,
    k: u64,
) -> Result<ConstructionCertificate> {
    if parts.len() != 4 {
        return Err(Error::OutOfRange(format!(
            "need exactly 4 parts, got {}",
            parts.len()
        )));
    }
    if k == 0 {
        return Err(Error::OutOfRange("violated k >= 1".into()));
    }
    let sorted = parts.canonicalized();
    let n = sorted.sizes();
    if k - 1 > (n[0] + n[1]) as u64 {
        return Err(Error::OutOfRange(format!(
            "violated k <= n_1 + n_2 + 1: k={k}, n_1+n_2={}",
            n[0] + n[1]
        )));
    }

    let mut graph = MultipartiteGraph::edgeless(n)?;
    for p in 0..3 {
        for i in 0..n[p] {
            for j in 0..n[3] {
                graph = graph.with_edge(VertexId::new(p, i), VertexId::new(3, j))?;
            }
        }
    }
    // the k−1 bipartite anchors: all of V₁ first, then V₂ as needed
    let anchors: Vec<VertexId> = (0..n[0])
        .map(|i| VertexId::new(0, i))
        .chain((0..n[1]).map(|i| VertexId::new(1, i)))
        .take((k - 1) as usize)
        .collect();
    for &a in &anchors {
        for j in 0..n[2] {
            graph = graph.with_edge(a, VertexId::new(2, j))?;
        }
    }

    let cert = ConstructionCertificate::certify(graph, 3, k);
    let expected = four_partite_triangle_lower_bound(&sorted, k)?.value;
    if cert.claimed_edges() != expected {
        return Err(Error::Precondition(format!(
            "construction produced {} edges, bound formula says {expected}",
            cert.claimed_edges()
        )));
    }
    Ok(cert)
}

/// For every host edge absent from the certificate's graph: add it, run
/// the detector, record whether a forbidden packing appears. When the
/// construction is extremal the theorem predicts `true` everywhere.
pub fn maximality_probe(cert: &ConstructionCertificate) -> Vec<((VertexId, VertexId), bool)> {
    let (k, r) = cert.forbidden();
    cert.graph()
        .missing_host_edges()
        .into_iter()
        .map(|(u, v)| {
            let augmented = cert
                .graph()
                .with_edge(u, v)
                .expect("missing host edges are addable");
            ((u, v), packing::contains_clique_packing(&augmented, r, k))
        })
        .collect()
}
