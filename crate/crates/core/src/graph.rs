//! Multipartite graph data model.
//!
//! Graphs are immutable after construction: every "mutating" operation
//! returns a new value, so concurrent readers never need coordination.
//! Adjacency is a packed bit matrix over the flat vertex range because the
//! extremal search performs millions of adjacency probes and row
//! intersections.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A vertex named by its part and its position within that part.
///
/// Part-local identity keeps transversal enumeration and per-part reasoning
/// trivial; the flat integer id is derivable via [`MultipartiteGraph::flat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId {
    pub part: usize,
    pub index: usize,
}

impl VertexId {
    pub fn new(part: usize, index: usize) -> Self {
        VertexId { part, index }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.part, self.index)
    }
}

/// Ordered tuple of part cardinalities (n₁,…,n_r) of a host graph.
///
/// Every entry is at least 1 and there are at least two parts. Graphs
/// produced by vertex deletion may carry zero-size parts internally, but a
/// `PartSizes` value always describes a genuine host.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartSizes(Vec<usize>);

impl PartSizes {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::InvalidPartSizes(format!(
                "need at least 2 parts, got {}",
                sizes.len()
            )));
        }
        if let Some(pos) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidPartSizes(format!(
                "part {pos} has size 0; every part must be non-empty"
            )));
        }
        Ok(PartSizes(sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false // len >= 2 by construction
    }

    pub fn total_vertices(&self) -> usize {
        self.0.iter().sum()
    }

    /// Σ_{i<j} nᵢnⱼ, the edge count of the complete host.
    pub fn host_edge_count(&self) -> u64 {
        let mut total: u64 = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                total += self.0[i] as u64 * self.0[j] as u64;
            }
        }
        total
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// The same sizes sorted non-decreasing (n₁ ≤ … ≤ n_r).
    #[must_use]
    pub fn canonicalized(&self) -> PartSizes {
        let mut s = self.0.clone();
        s.sort_unstable();
        PartSizes(s)
    }
}

impl fmt::Display for PartSizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The parameter tuple naming a Turán problem instance: part sizes, the
/// clique size r (= number of parts), and the packing multiplicity k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HostSpec {
    parts: PartSizes,
    k: u64,
}

impl HostSpec {
    pub fn new(parts: PartSizes, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("multiplicity k must be >= 1".into()));
        }
        Ok(HostSpec { parts, k })
    }

    pub fn parts(&self) -> &PartSizes {
        &self.parts
    }

    /// Clique size; always equals the number of parts.
    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    #[must_use]
    pub fn canonicalized(&self) -> HostSpec {
        HostSpec {
            parts: self.parts.canonicalized(),
            k: self.k,
        }
    }
}

impl fmt::Display for HostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{}}} vs {}K_{}", self.parts, self.k, self.r())
    }
}

/// How a disjoint union places the parts of both operands into the result.
///
/// `left_map[p]` (resp. `right_map[p]`) is the target part receiving part
/// `p` of the left (right) operand. Within a target part the left operand's
/// vertices come first, in operand order, then the right operand's. The map
/// is explicit because constructions routinely embed both operands into the
/// same host parts, where positional auto-alignment would be ambiguous.
#[derive(Debug, Clone)]
pub struct UnionAlignment {
    pub target_parts: usize,
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
}

impl UnionAlignment {
    /// Alignment that keeps both operands' parts side by side unmerged:
    /// left parts first, then right parts.
    pub fn concat(left_parts: usize, right_parts: usize) -> Self {
        UnionAlignment {
            target_parts: left_parts + right_parts,
            left_map: (0..left_parts).collect(),
            right_map: (left_parts..left_parts + right_parts).collect(),
        }
    }

    /// Alignment that merges part i of both operands into target part i.
    pub fn partwise(parts: usize) -> Self {
        UnionAlignment {
            target_parts: parts,
            left_map: (0..parts).collect(),
            right_map: (0..parts).collect(),
        }
    }
}

/// An r-partite graph on fixed part sizes with bit-matrix adjacency.
///
/// Invariants maintained by every constructor and operation:
/// no edge joins two vertices of the same part, adjacency is symmetric and
/// irreflexive, and the cached edge count agrees with recomputation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultipartiteGraph {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edge_count: usize,
}

impl MultipartiteGraph {
    fn with_capacity(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPartSizes("need at least one part".into()));
        }
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0usize;
        for &s in sizes {
            offsets.push(acc);
            acc += s;
        }
        offsets.push(acc);
        let words = acc.div_ceil(64).max(1);
        Ok(MultipartiteGraph {
            sizes: sizes.to_vec(),
            offsets,
            n: acc,
            words,
            adj: vec![0; acc * words],
            edge_count: 0,
        })
    }

    /// The edgeless graph on the given part sizes. Zero sizes are allowed;
    /// they arise naturally from vertex deletion.
    pub fn edgeless(sizes: &[usize]) -> Result<Self> {
        Self::with_capacity(sizes)
    }

    /// The complete multipartite graph K_{n₁,…,n_r}: every cross-part pair
    /// adjacent, Σ_{i<j} nᵢnⱼ edges.
    pub fn complete(parts: &PartSizes) -> Self {
        let mut g = Self::with_capacity(parts.sizes()).expect("PartSizes is non-empty");
        for p in 0..g.sizes.len() {
            for q in p + 1..g.sizes.len() {
                for i in 0..g.sizes[p] {
                    for j in 0..g.sizes[q] {
                        g.set_edge_flat(g.offsets[p] + i, g.offsets[q] + j);
                    }
                }
            }
        }
        g
    }

    /// Build a graph from an explicit edge list.
    pub fn from_edges<I>(sizes: &[usize], edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::with_capacity(sizes)?;
        for (u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    fn add_edge_checked(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u.part == v.part {
            return Err(Error::Partiteness(format!(
                "edge {u}-{v} joins two vertices of part {}",
                u.part
            )));
        }
        self.set_edge_flat(self.flat(u), self.flat(v));
        Ok(())
    }

    fn set_edge_flat(&mut self, a: usize, b: usize) {
        let w = self.words;
        if self.adj[a * w + b / 64] >> (b % 64) & 1 == 0 {
            self.adj[a * w + b / 64] |= 1 << (b % 64);
            self.adj[b * w + a / 64] |= 1 << (a % 64);
            self.edge_count += 1;
        }
    }

    fn unset_edge_flat(&mut self, a: usize, b: usize) {
        let w = self.words;
        if self.adj[a * w + b / 64] >> (b % 64) & 1 == 1 {
            self.adj[a * w + b / 64] &= !(1 << (b % 64));
            self.adj[b * w + a / 64] &= !(1 << (a % 64));
            self.edge_count -= 1;
        }
    }

    pub fn part_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn part_size(&self, p: usize) -> usize {
        self.sizes[p]
    }

    pub fn total_vertices(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Flat id of a vertex: parts laid out consecutively in part order.
    #[inline]
    pub fn flat(&self, v: VertexId) -> usize {
        self.offsets[v.part] + v.index
    }

    /// Inverse of [`flat`](Self::flat).
    pub fn vertex_at(&self, flat: usize) -> VertexId {
        debug_assert!(flat < self.n);
        let part = match self.offsets.binary_search(&flat) {
            Ok(mut p) => {
                // offsets of empty parts collide; pick the one that owns slots
                while self.sizes[p] == 0 {
                    p += 1;
                }
                p
            }
            Err(p) => p - 1,
        };
        VertexId::new(part, flat - self.offsets[part])
    }

    /// Flat-id range `[start, end)` of a part.
    pub fn part_range(&self, p: usize) -> std::ops::Range<usize> {
        self.offsets[p]..self.offsets[p + 1]
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.part < self.sizes.len() && v.index < self.sizes[v.part]
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Adjacency test. Both vertices must exist in the graph.
    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(self.contains_vertex(u) && self.contains_vertex(v));
        self.has_edge_flat(self.flat(u), self.flat(v))
    }

    #[inline]
    pub fn has_edge_flat(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Adjacency row of a vertex as packed words over flat ids.
    #[inline]
    pub fn row(&self, flat: usize) -> &[u64] {
        &self.adj[flat * self.words..(flat + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.row(self.flat(v))
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.sizes.len())
            .flat_map(move |p| (0..self.sizes[p]).map(move |i| VertexId::new(p, i)))
    }

    /// All edges, normalized (u < v) and sorted lexicographically.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for a in 0..self.n {
            let row = self.row(a);
            for (wi, &w) in row.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let b = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    if b > a {
                        out.push((self.vertex_at(a), self.vertex_at(b)));
                    }
                }
            }
        }
        out
    }

    /// Cross-part vertex pairs NOT present as edges, normalized and sorted.
    pub fn missing_host_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for p in 0..self.sizes.len() {
            for q in p + 1..self.sizes.len() {
                for i in 0..self.sizes[p] {
                    for j in 0..self.sizes[q] {
                        let (u, v) = (VertexId::new(p, i), VertexId::new(q, j));
                        if !self.has_edge(u, v) {
                            out.push((u, v));
                        }
                    }
                }
            }
        }
        out
    }

    /// Number of edges with one endpoint in part `i` and one in part `j`.
    pub fn pair_edge_count(&self, i: usize, j: usize) -> Result<usize> {
        if i == j {
            return Err(Error::SamePart(i));
        }
        if i >= self.sizes.len() || j >= self.sizes.len() {
            return Err(Error::OutOfRange(format!(
                "part pair ({i},{j}) outside {} parts",
                self.sizes.len()
            )));
        }
        let mut count = 0;
        for a in self.part_range(i) {
            let row = self.row(a);
            for b in self.part_range(j) {
                count += (row[b / 64] >> (b % 64) & 1) as usize;
            }
        }
        Ok(count)
    }

    /// Join G+H: parts concatenated, all cross-operand pairs added.
    #[must_use]
    pub fn join(&self, other: &MultipartiteGraph) -> MultipartiteGraph {
        let mut sizes = self.sizes.clone();
        sizes.extend_from_slice(&other.sizes);
        let mut g = Self::with_capacity(&sizes).expect("operands are non-empty");
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge_flat(a, b) {
                    g.set_edge_flat(a, b);
                }
            }
        }
        for a in 0..other.n {
            for b in a + 1..other.n {
                if other.has_edge_flat(a, b) {
                    g.set_edge_flat(self.n + a, self.n + b);
                }
            }
        }
        for a in 0..self.n {
            for b in 0..other.n {
                g.set_edge_flat(a, self.n + b);
            }
        }
        g
    }

    /// Vertex-disjoint union with parts merged according to `align`;
    /// no cross edges are added.
    pub fn disjoint_union(
        &self,
        other: &MultipartiteGraph,
        align: &UnionAlignment,
    ) -> Result<MultipartiteGraph> {
        if align.left_map.len() != self.sizes.len() || align.right_map.len() != other.sizes.len() {
            return Err(Error::Alignment(format!(
                "alignment maps {}+{} parts, operands have {}+{}",
                align.left_map.len(),
                align.right_map.len(),
                self.sizes.len(),
                other.sizes.len()
            )));
        }
        for &t in align.left_map.iter().chain(&align.right_map) {
            if t >= align.target_parts {
                return Err(Error::Alignment(format!(
                    "target part {t} out of range (target has {} parts)",
                    align.target_parts
                )));
            }
        }
        // Merging two parts of one operand is fine only while no edge runs
        // between them; otherwise adjacent vertices would share a part.
        for (g, map) in [(self, &align.left_map), (other, &align.right_map)] {
            for p in 0..map.len() {
                for q in p + 1..map.len() {
                    if map[p] == map[q] && g.pair_edge_count(p, q)? > 0 {
                        return Err(Error::Partiteness(format!(
                            "parts {p} and {q} of one operand are adjacent but both map to target part {}",
                            map[p]
                        )));
                    }
                }
            }
        }

        let mut sizes = vec![0usize; align.target_parts];
        // Left operand's vertices first within each target part, then right's.
        let mut left_base = vec![0usize; self.sizes.len()];
        for (p, &t) in align.left_map.iter().enumerate() {
            left_base[p] = sizes[t];
            sizes[t] += self.sizes[p];
        }
        let mut right_base = vec![0usize; other.sizes.len()];
        for (p, &t) in align.right_map.iter().enumerate() {
            right_base[p] = sizes[t];
            sizes[t] += other.sizes[p];
        }

        let relabel_left = |v: VertexId| -> VertexId {
            VertexId::new(align.left_map[v.part], left_base[v.part] + v.index)
        };
        let relabel_right = |v: VertexId| -> VertexId {
            VertexId::new(align.right_map[v.part], right_base[v.part] + v.index)
        };

        let mut edges = Vec::with_capacity(self.edge_count + other.edge_count);
        for (u, v) in self.edges() {
            edges.push((relabel_left(u), relabel_left(v)));
        }
        for (u, v) in other.edges() {
            edges.push((relabel_right(u), relabel_right(v)));
        }
        Self::from_edges(&sizes, edges)
    }

    /// Induced subgraph on the complement of `s`. Parts are never dropped:
    /// a fully deleted part stays with size 0 so part indices remain stable.
    pub fn delete_vertices(&self, s: &[VertexId]) -> Result<MultipartiteGraph> {
        for &v in s {
            self.check_vertex(v)?;
        }
        let mut drop = BitSet::new(self.n.max(1));
        for &v in s {
            drop.insert(self.flat(v));
        }
        self.restrict(|flat| !drop.contains(flat))
    }

    /// Induced subgraph G[S]. Dual of [`delete_vertices`](Self::delete_vertices).
    pub fn induced_subgraph(&self, s: &[VertexId]) -> Result<MultipartiteGraph> {
        for &v in s {
            self.check_vertex(v)?;
        }
        let mut keep = BitSet::new(self.n.max(1));
        for &v in s {
            keep.insert(self.flat(v));
        }
        self.restrict(|flat| keep.contains(flat))
    }

    fn restrict(&self, keep: impl Fn(usize) -> bool) -> Result<MultipartiteGraph> {
        let mut sizes = vec![0usize; self.sizes.len()];
        let mut new_flat = vec![usize::MAX; self.n];
        let mut kept = Vec::new();
        for p in 0..self.sizes.len() {
            for a in self.part_range(p) {
                if keep(a) {
                    new_flat[a] = sizes[p]; // index within part, remapped below
                    sizes[p] += 1;
                    kept.push(a);
                }
            }
        }
        let mut g = Self::with_capacity(&sizes)?;
        for (ai, &a) in kept.iter().enumerate() {
            for &b in kept.iter().skip(ai + 1) {
                if self.has_edge_flat(a, b) {
                    let u = VertexId::new(self.vertex_at(a).part, new_flat[a]);
                    let v = VertexId::new(self.vertex_at(b).part, new_flat[b]);
                    g.set_edge_flat(g.flat(u), g.flat(v));
                }
            }
        }
        Ok(g)
    }

    /// Copy of the graph with one extra edge.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<MultipartiteGraph> {
        let mut g = self.clone();
        g.add_edge_checked(u, v)?;
        Ok(g)
    }

    /// Copy of the graph without the given edge (a no-op if absent).
    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Result<MultipartiteGraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.unset_edge_flat(self.flat(u), self.flat(v));
        Ok(g)
    }

    /// Relabel vertices by a flat permutation that maps every part onto
    /// itself. Used by the search canonicalization; the caller guarantees
    /// part preservation.
    pub(crate) fn relabel_flat(&self, perm: &[usize]) -> MultipartiteGraph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Self::with_capacity(&self.sizes).expect("same shape");
        for a in 0..self.n {
            let row = self.row(a);
            for (wi, &w) in row.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let b = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    if b > a {
                        g.set_edge_flat(perm[a], perm[b]);
                    }
                }
            }
        }
        g
    }

    /// Raw adjacency words, row-major over flat ids.
    pub(crate) fn adjacency_words(&self) -> &[u64] {
        &self.adj
    }

    /// Verify the structural invariants by full recomputation. Used after
    /// parsing and in tests; operations maintain these by construction.
    pub fn check_invariants(&self) -> Result<()> {
        let mut recount = 0usize;
        for a in 0..self.n {
            for b in 0..self.n {
                let ab = self.has_edge_flat(a, b);
                if ab != self.has_edge_flat(b, a) {
                    return Err(Error::Partiteness(format!(
                        "asymmetric adjacency between flat {a} and {b}"
                    )));
                }
                if ab && a == b {
                    return Err(Error::Partiteness(format!("self-loop at flat {a}")));
                }
                if ab && self.vertex_at(a).part == self.vertex_at(b).part {
                    return Err(Error::Partiteness(format!(
                        "edge inside part {}",
                        self.vertex_at(a).part
                    )));
                }
                if ab && a < b {
                    recount += 1;
                }
            }
        }
        if recount != self.edge_count {
            return Err(Error::Partiteness(format!(
                "cached edge count {} != recount {recount}",
                self.edge_count
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for MultipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MultipartiteGraph(parts=[{}], edges={})",
            self.sizes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.edge_count
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(sizes: &[usize]) -> PartSizes {
        PartSizes::new(sizes.to_vec()).unwrap()
    }

    #[test]
    fn complete_edge_counts() {
        assert_eq!(MultipartiteGraph::complete(&parts(&[2, 2, 2])).edge_count(), 12);
        assert_eq!(MultipartiteGraph::complete(&parts(&[1, 1])).edge_count(), 1);
        assert_eq!(MultipartiteGraph::complete(&parts(&[3, 4])).edge_count(), 12);
    }

    #[test]
    fn part_sizes_rejects_invalid() {
        assert!(PartSizes::new(vec![3]).is_err());
        assert!(PartSizes::new(vec![2, 0]).is_err());
        assert!(PartSizes::new(vec![]).is_err());
    }

    #[test]
    fn join_examples() {
        // 2K₁ + 2K₁ = K_{2,2}
        let a = MultipartiteGraph::edgeless(&[2]).unwrap();
        let b = MultipartiteGraph::edgeless(&[2]).unwrap();
        let j = a.join(&b);
        assert_eq!(j.part_sizes(), &[2, 2]);
        assert_eq!(j.edge_count(), 4);

        // join adds only cross edges: empty(1) + empty(1,1) has 2 edges
        let a = MultipartiteGraph::edgeless(&[1]).unwrap();
        let b = MultipartiteGraph::edgeless(&[1, 1]).unwrap();
        let j = a.join(&b);
        assert_eq!(j.part_count(), 3);
        assert_eq!(j.edge_count(), 2);

        // K_{1,1} + empty(2): 1 + 4 cross = 5
        let a = MultipartiteGraph::complete(&parts(&[1, 1]));
        let b = MultipartiteGraph::edgeless(&[2]).unwrap();
        assert_eq!(a.join(&b).edge_count(), 5);
    }

    #[test]
    fn join_edge_count_is_additive() {
        let g = MultipartiteGraph::complete(&parts(&[2, 3]));
        let h = MultipartiteGraph::complete(&parts(&[1, 2]));
        let j = g.join(&h);
        assert_eq!(
            j.edge_count(),
            g.edge_count() + h.edge_count() + g.total_vertices() * h.total_vertices()
        );
        j.check_invariants().unwrap();
    }

    #[test]
    fn union_construction_step() {
        // 3K₁ ∪ K_{1,2}, K₁s and the 1-side into part 0, the 2-side into
        // part 1: the V₁V₂ picture of the extremal construction for
        // (n₁,n₂)=(4,2), k=2.
        let a = MultipartiteGraph::edgeless(&[3]).unwrap();
        let b = MultipartiteGraph::complete(&parts(&[1, 2]));
        let align = UnionAlignment {
            target_parts: 2,
            left_map: vec![0],
            right_map: vec![0, 1],
        };
        let u = a.disjoint_union(&b, &align).unwrap();
        assert_eq!(u.part_sizes(), &[4, 2]);
        assert_eq!(u.edge_count(), 2);
        u.check_invariants().unwrap();
        // the K_{1,2} landed on the last vertex of part 0
        assert!(u.has_edge(VertexId::new(0, 3), VertexId::new(1, 0)));
        assert!(u.has_edge(VertexId::new(0, 3), VertexId::new(1, 1)));
    }

    #[test]
    fn union_identity_and_matching() {
        let g = MultipartiteGraph::complete(&parts(&[2, 2]));
        let empty = MultipartiteGraph::edgeless(&[0, 0]).unwrap();
        let u = g
            .disjoint_union(&empty, &UnionAlignment::partwise(2))
            .unwrap();
        assert_eq!(u, g);

        // K_{1,1} ∪ K_{1,1} part-wise = 2K₂ inside (2,2)
        let e = MultipartiteGraph::complete(&parts(&[1, 1]));
        let u = e.disjoint_union(&e, &UnionAlignment::partwise(2)).unwrap();
        assert_eq!(u.part_sizes(), &[2, 2]);
        assert_eq!(u.edge_count(), 2);
        assert_eq!(
            u.edge_count(),
            e.edge_count() + e.edge_count() // unions are exactly additive
        );
    }

    #[test]
    fn union_rejects_merging_adjacent_parts() {
        let g = MultipartiteGraph::complete(&parts(&[1, 1]));
        let empty = MultipartiteGraph::edgeless(&[1]).unwrap();
        let align = UnionAlignment {
            target_parts: 1,
            left_map: vec![0, 0],
            right_map: vec![0],
        };
        assert!(matches!(
            g.disjoint_union(&empty, &align),
            Err(Error::Partiteness(_))
        ));
    }

    #[test]
    fn delete_and_induced() {
        let g = MultipartiteGraph::complete(&parts(&[2, 2, 2]));
        let transversal = [
            VertexId::new(0, 0),
            VertexId::new(1, 0),
            VertexId::new(2, 0),
        ];
        let d = g.delete_vertices(&transversal).unwrap();
        assert_eq!(d.part_sizes(), &[1, 1, 1]);
        assert_eq!(d.edge_count(), 3);

        assert_eq!(g.delete_vertices(&[]).unwrap(), g);

        let k23 = MultipartiteGraph::complete(&parts(&[2, 3]));
        let all0 = [VertexId::new(0, 0), VertexId::new(0, 1)];
        let d = k23.delete_vertices(&all0).unwrap();
        assert_eq!(d.part_sizes(), &[0, 3]);
        assert_eq!(d.edge_count(), 0);

        let ind = g.induced_subgraph(&transversal).unwrap();
        assert_eq!(ind.edge_count(), 3); // a triangle
        let same_part = [VertexId::new(0, 0), VertexId::new(0, 1)];
        assert_eq!(g.induced_subgraph(&same_part).unwrap().edge_count(), 0);
        assert_eq!(g.induced_subgraph(&[]).unwrap().edge_count(), 0);
    }

    #[test]
    fn delete_rejects_unknown_vertex() {
        let g = MultipartiteGraph::complete(&parts(&[2, 2]));
        assert!(matches!(
            g.delete_vertices(&[VertexId::new(0, 5)]),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            g.delete_vertices(&[VertexId::new(7, 0)]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn pair_edge_counts() {
        let g = MultipartiteGraph::complete(&parts(&[2, 3, 4]));
        assert_eq!(g.pair_edge_count(0, 1).unwrap(), 6);
        assert_eq!(g.pair_edge_count(1, 2).unwrap(), 12);
        assert!(matches!(g.pair_edge_count(1, 1), Err(Error::SamePart(1))));

        let e = MultipartiteGraph::edgeless(&[2, 3, 4]).unwrap();
        assert_eq!(e.pair_edge_count(0, 2).unwrap(), 0);
    }

    #[test]
    fn edge_count_equals_pair_sum() {
        let g = MultipartiteGraph::complete(&parts(&[2, 3, 4]));
        let mut sum = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                sum += g.pair_edge_count(i, j).unwrap();
            }
        }
        assert_eq!(sum, g.edge_count());
    }

    #[test]
    fn transversal_deletion_count_on_balanced_grid() {
        // Edges of the complete host meeting one transversal:
        // (r−1)(n₁+(r−2)n₂) + (r−1)n₂ − C(r,2) when n₂=…=n_r.
        for r in 3..=5usize {
            for n1 in 1..=4usize {
                for n2 in n1..=4usize {
                    let mut sizes = vec![n2; r];
                    sizes[0] = n1;
                    let g = MultipartiteGraph::complete(&parts(&sizes));
                    let s: Vec<VertexId> = (0..r).map(|p| VertexId::new(p, 0)).collect();
                    let d = g.delete_vertices(&s).unwrap();
                    let incident = g.edge_count() - d.edge_count();
                    let choose2 = r * (r - 1) / 2;
                    let expected = (r - 1) * (n1 + (r - 2) * n2) + (r - 1) * n2 - choose2;
                    assert_eq!(incident, expected, "r={r} n1={n1} n2={n2}");
                }
            }
        }
    }

    #[test]
    fn with_and_without_edge() {
        let g = MultipartiteGraph::edgeless(&[2, 2]).unwrap();
        let (u, v) = (VertexId::new(0, 0), VertexId::new(1, 1));
        let g2 = g.with_edge(u, v).unwrap();
        assert!(g2.has_edge(u, v));
        assert_eq!(g2.without_edge(u, v).unwrap(), g);
        assert!(g.with_edge(VertexId::new(0, 0), VertexId::new(0, 1)).is_err());
    }

    #[test]
    fn vertex_at_roundtrip_with_empty_parts() {
        let g = MultipartiteGraph::edgeless(&[2, 0, 3]).unwrap();
        for v in g.vertices() {
            assert_eq!(g.vertex_at(g.flat(v)), v);
        }
    }
}
