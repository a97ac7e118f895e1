//! Clique packing detection.
//!
//! In an r-partite graph every r-clique uses r distinct parts (vertices of
//! one part are never adjacent), so clique enumeration is a backtracking
//! walk across parts with adjacency-intersection pruning. The packing
//! search then looks for k pairwise vertex-disjoint cliques over the
//! enumerated list, branching on the most-constrained vertex.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{MultipartiteGraph, VertexId};
use std::fmt;

/// One vertex from every part, in part order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transversal(Vec<VertexId>);

impl Transversal {
    /// Validate that `vertices` has exactly one vertex of every part of `g`.
    pub fn new(g: &MultipartiteGraph, mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.len() != g.part_count() {
            return Err(Error::NotTransversal(format!(
                "{} vertices for {} parts",
                vertices.len(),
                g.part_count()
            )));
        }
        for (p, v) in vertices.iter().enumerate() {
            if v.part != p {
                return Err(Error::NotTransversal(format!(
                    "no vertex for part {p} (saw {v})"
                )));
            }
            if !g.contains_vertex(*v) {
                return Err(Error::UnknownVertex(*v));
            }
        }
        Ok(Transversal(vertices))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }
}

impl fmt::Display for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// k pairwise vertex-disjoint cliques, each on r mutually adjacent vertices
/// from r distinct parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePacking {
    cliques: Vec<Vec<VertexId>>,
}

impl CliquePacking {
    pub fn cliques(&self) -> &[Vec<VertexId>] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// All edges used by the packing, normalized and sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for c in &self.cliques {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    out.push((c[i].min(c[j]), c[i].max(c[j])));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Independent re-verification: every clique complete, r distinct
    /// parts per clique, pairwise vertex-disjoint.
    pub fn verify(&self, g: &MultipartiteGraph, r: usize, k: u64) -> Result<()> {
        if self.cliques.len() as u64 != k {
            return Err(Error::Precondition(format!(
                "packing has {} cliques, expected {k}",
                self.cliques.len()
            )));
        }
        let mut used = BitSet::new(g.total_vertices().max(1));
        for c in &self.cliques {
            if c.len() != r {
                return Err(Error::Precondition(format!(
                    "clique has {} vertices, expected {r}",
                    c.len()
                )));
            }
            for (i, &u) in c.iter().enumerate() {
                if !g.contains_vertex(u) {
                    return Err(Error::UnknownVertex(u));
                }
                if used.contains(g.flat(u)) {
                    return Err(Error::Precondition(format!("vertex {u} reused")));
                }
                used.insert(g.flat(u));
                for &v in &c[i + 1..] {
                    if u.part == v.part {
                        return Err(Error::Precondition(format!(
                            "clique vertices {u} and {v} share a part"
                        )));
                    }
                    if !g.has_edge(u, v) {
                        return Err(Error::Precondition(format!("missing edge {u}-{v}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Render a packing: one line per clique, `part index` pairs.
pub fn format_packing(p: &CliquePacking) -> String {
    let mut out = String::new();
    for c in p.cliques() {
        let fields: Vec<String> = c
            .iter()
            .flat_map(|v| [v.part.to_string(), v.index.to_string()])
            .collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

struct Frame {
    part: usize,
    /// Next action: `< size` try that vertex, `== size` try skipping the
    /// part, `> size` frame exhausted.
    next: usize,
    /// Whether entering this frame consumed a vertex choice in the parent.
    parent_chose: bool,
}

/// Lazy lexicographic enumeration of r-vertex cliques.
pub struct CliqueIter<'a> {
    g: &'a MultipartiteGraph,
    r: usize,
    stack: Vec<Frame>,
    chosen: Vec<VertexId>,
    /// masks[d] = common neighborhood of chosen[0..d]; masks[0] is all-ones.
    masks: Vec<BitSet>,
}

impl<'a> CliqueIter<'a> {
    fn new(g: &'a MultipartiteGraph, r: usize) -> Self {
        let n = g.total_vertices();
        let mut full = BitSet::new(n.max(1));
        for i in 0..n {
            full.insert(i);
        }
        let masks = vec![full; r + 1];
        let stack = if r == 0 || r > g.part_count() {
            Vec::new()
        } else {
            vec![Frame {
                part: 0,
                next: 0,
                parent_chose: false,
            }]
        };
        CliqueIter {
            g,
            r,
            stack,
            chosen: Vec::with_capacity(r),
            masks,
        }
    }
}

impl Iterator for CliqueIter<'_> {
    type Item = Vec<VertexId>;

    fn next(&mut self) -> Option<Vec<VertexId>> {
        let part_count = self.g.part_count();
        loop {
            let frame_idx = match self.stack.len() {
                0 => return None,
                d => d - 1,
            };
            let part = self.stack[frame_idx].part;
            let size = self.g.part_size(part);
            let action = self.stack[frame_idx].next;
            self.stack[frame_idx].next += 1;

            if action < size {
                let v = VertexId::new(part, action);
                let flat = self.g.flat(v);
                let depth = self.chosen.len();
                if !self.masks[depth].contains(flat) {
                    continue; // not adjacent to all chosen
                }
                self.chosen.push(v);
                if self.chosen.len() == self.r {
                    let result = self.chosen.clone();
                    self.chosen.pop();
                    return Some(result);
                }
                let needed = self.r - self.chosen.len();
                if part_count - part > needed {
                    let (lo, hi) = self.masks.split_at_mut(depth + 1);
                    hi[0].clone_from(&lo[depth]);
                    hi[0].intersect_with_words(self.g.row(flat));
                    self.stack.push(Frame {
                        part: part + 1,
                        next: 0,
                        parent_chose: true,
                    });
                } else {
                    self.chosen.pop(); // not enough parts left
                }
            } else if action == size {
                // skip this part entirely, if enough parts remain
                let needed = self.r - self.chosen.len();
                if part_count - part > needed {
                    self.stack.push(Frame {
                        part: part + 1,
                        next: 0,
                        parent_chose: false,
                    });
                }
            } else {
                let popped = self.stack.pop().expect("stack non-empty");
                if popped.parent_chose {
                    self.chosen.pop();
                }
            }
        }
    }
}

/// Stream of transversals inducing K_r, in lexicographic order.
pub fn enumerate_transversal_cliques(
    g: &MultipartiteGraph,
) -> impl Iterator<Item = Transversal> + '_ {
    CliqueIter::new(g, g.part_count()).map(Transversal)
}

/// Stream of r-vertex cliques (any r distinct parts), lexicographic.
pub fn enumerate_cliques(g: &MultipartiteGraph, r: usize) -> CliqueIter<'_> {
    CliqueIter::new(g, r)
}

/// Number of transversal cliques — the proof's q. Exact, no short-circuit.
pub fn count_cliques(g: &MultipartiteGraph) -> u64 {
    enumerate_transversal_cliques(g).count() as u64
}

/// Find k pairwise disjoint transversal cliques, if any exist.
pub fn find_packing(g: &MultipartiteGraph, k: u64) -> Option<CliquePacking> {
    find_clique_packing(g, g.part_count(), k)
}

pub fn contains_packing(g: &MultipartiteGraph, k: u64) -> bool {
    find_packing(g, k).is_some()
}

/// Find k disjoint r-cliques where a clique may span any r distinct parts.
pub fn find_clique_packing(g: &MultipartiteGraph, r: usize, k: u64) -> Option<CliquePacking> {
    if k == 0 {
        return Some(CliquePacking { cliques: vec![] });
    }
    if k == 1 {
        // packing search collapses to first-clique lookup
        return CliqueIter::new(g, r).next().map(|c| CliquePacking { cliques: vec![c] });
    }
    let cliques: Vec<CliqueData> = CliqueIter::new(g, r)
        .map(|verts| CliqueData::new(g, verts))
        .collect();
    if (cliques.len() as u64) < k {
        return None;
    }
    let search = PackingSearch {
        g,
        cliques,
        k: k as usize,
        transversal_mode: r == g.part_count(),
        r,
    };
    search.run().map(|indices| CliquePacking {
        cliques: indices
            .into_iter()
            .map(|i| search.cliques[i].verts.clone())
            .collect(),
    })
}

pub fn contains_clique_packing(g: &MultipartiteGraph, r: usize, k: u64) -> bool {
    find_clique_packing(g, r, k).is_some()
}

struct CliqueData {
    verts: Vec<VertexId>,
    mask: BitSet,
}

impl CliqueData {
    fn new(g: &MultipartiteGraph, verts: Vec<VertexId>) -> Self {
        let mut mask = BitSet::new(g.total_vertices().max(1));
        for &v in &verts {
            mask.insert(g.flat(v));
        }
        CliqueData { verts, mask }
    }
}

struct PackingSearch<'a> {
    g: &'a MultipartiteGraph,
    cliques: Vec<CliqueData>,
    k: usize,
    transversal_mode: bool,
    r: usize,
}

impl PackingSearch<'_> {
    fn run(&self) -> Option<Vec<usize>> {
        let avail: Vec<usize> = (0..self.cliques.len()).collect();
        let mut chosen = Vec::with_capacity(self.k);
        self.recurse(&avail, &mut chosen)
    }

    /// Upper bound on how many disjoint cliques `avail` can still supply.
    fn capacity_bound(&self, avail: &[usize]) -> usize {
        let n = self.g.total_vertices().max(1);
        let mut seen = BitSet::new(n);
        for &c in avail {
            seen.union_with(&self.cliques[c].mask);
        }
        if self.transversal_mode {
            // a packing of size t needs t distinct vertices in every part
            (0..self.g.part_count())
                .map(|p| {
                    let range = self.g.part_range(p);
                    range.filter(|&f| seen.contains(f)).count()
                })
                .min()
                .unwrap_or(0)
        } else {
            seen.count() / self.r
        }
    }

    fn recurse(&self, avail: &[usize], chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
        let needed = self.k - chosen.len();
        if needed == 0 {
            return Some(chosen.clone());
        }
        if avail.len() < needed || self.capacity_bound(avail) < needed {
            return None;
        }

        // most-constrained vertex: covered by the fewest available cliques
        let n = self.g.total_vertices();
        let mut cover = vec![0u32; n];
        for &c in avail {
            for f in self.cliques[c].mask.iter() {
                cover[f] += 1;
            }
        }
        let branch_vertex = (0..n)
            .filter(|&f| cover[f] > 0)
            .min_by_key(|&f| (cover[f], f))
            .expect("avail is non-empty");

        // either some chosen clique covers the branch vertex ...
        for &c in avail {
            if !self.cliques[c].mask.contains(branch_vertex) {
                continue;
            }
            let mask = &self.cliques[c].mask;
            let rest: Vec<usize> = avail
                .iter()
                .copied()
                .filter(|&a| a != c && self.cliques[a].mask.is_disjoint(mask))
                .collect();
            chosen.push(c);
            if let Some(hit) = self.recurse(&rest, chosen) {
                return Some(hit);
            }
            chosen.pop();
        }
        // ... or no clique of the packing touches it at all
        let rest: Vec<usize> = avail
            .iter()
            .copied()
            .filter(|&a| !self.cliques[a].mask.contains(branch_vertex))
            .collect();
        self.recurse(&rest, chosen)
    }
}
