//! Exact brute-force Turán numbers by top-down destruction branch and
//! bound.
//!
//! The search starts from the complete host. Every node is infeasible
//! until proven otherwise: the detector finds one forbidden packing, and
//! since any feasible subgraph must omit at least one of that packing's
//! edges, the node branches on deleting each. Completeness is kept while
//! duplicates are cut two ways: later siblings protect the edges their
//! earlier siblings deleted (so the children partition the feasible
//! space), and a bounded seen-set skips states that are within-part
//! relabelings of already-expanded ones. A feasible node raises the shared
//! incumbent; nodes whose edge count cannot beat the incumbent are pruned.
//! The incumbent is seeded from the known extremal (or best conjectured)
//! construction, which makes verification runs start at the right answer
//! and spend their time proving optimality.

use crate::construct;
use crate::error::{Error, Result};
use crate::formulas::{FormulaResult, turan_number};
use crate::graph::{HostSpec, MultipartiteGraph, PartSizes, VertexId};
use crate::packing::{self, CliquePacking};
use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Node, time, and scale limits for one oracle invocation.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    /// Worker count for the optional work-stealing mode. The proven
    /// maximum is schedule-independent; witnesses are deterministic only
    /// at parallelism 1.
    pub parallelism: usize,
    /// Hosts with more edges than this are refused (desk scale). Hard
    /// ceiling 128: the search keeps per-node edge masks in 128 bits.
    pub max_host_edges: u64,
    /// Bound on the canonical-form seen-set; hits beyond it are simply
    /// not recorded, which costs time but never correctness.
    pub seen_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 10_000_000,
            max_time: Duration::from_secs(60),
            parallelism: 1,
            max_host_edges: 64,
            seen_cap: 1 << 20,
        }
    }
}

impl SearchBudget {
    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism.max(1);
        self
    }
}

/// An exact extremal number with its witness subgraph.
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    /// Canonical (sorted) part sizes of the host.
    pub parts: PartSizes,
    /// Clique size of the forbidden packing; equals the part count except
    /// in the exploratory r < ℓ mode.
    pub r: usize,
    pub k: u64,
    pub max_edges: u64,
    pub witness: MultipartiteGraph,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// ex(K_{n₁,…,n_r}, kK_r), exactly, with a kK_r-free witness attached.
pub fn extremal_number(spec: &HostSpec, budget: &SearchBudget) -> Result<ExtremalResult> {
    let canonical = spec.canonicalized();
    extremal_number_general(canonical.parts(), canonical.r(), canonical.k(), budget)
}

/// ex(K_{n₁,…,n_ℓ}, kK_r) for r ≤ ℓ, where a K_r may span any r distinct
/// parts. For r < ℓ no closed formula is claimed; this is the exploratory
/// ground truth.
pub fn extremal_number_general(
    parts: &PartSizes,
    r: usize,
    k: u64,
    budget: &SearchBudget,
) -> Result<ExtremalResult> {
    if r < 2 || r > parts.len() {
        return Err(Error::OutOfRange(format!(
            "clique size r={r} must lie in [2, {}]",
            parts.len()
        )));
    }
    if k == 0 {
        return Err(Error::OutOfRange("k must be >= 1".into()));
    }
    let parts = parts.canonicalized();
    let host_edges = parts.host_edge_count();
    if host_edges > budget.max_host_edges || host_edges > 128 {
        return Err(Error::OutOfRange(format!(
            "host has {host_edges} edges, over the configured limit of {} (hard ceiling 128)",
            budget.max_host_edges.min(128)
        )));
    }

    let start = Instant::now();
    let host = MultipartiteGraph::complete(&parts);

    // trivial range: the forbidden packing does not fit in the host at all
    if packing::find_clique_packing(&host, r, k).is_none() {
        return Ok(ExtremalResult {
            parts,
            r,
            k,
            max_edges: host_edges,
            witness: host,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        });
    }

    let (seed_edges, seed_witness) = seed_incumbent(&parts, r, k);
    debug_assert!(!packing::contains_clique_packing(&seed_witness, r, k));

    let index = HostEdgeIndex::new(&host);
    let shared = Shared {
        best: Mutex::new((seed_edges, seed_witness)),
        incumbent: AtomicU64::new(seed_edges),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        deadline: start + budget.max_time,
        max_nodes: budget.max_nodes,
    };
    let ctx = SearchContext {
        index: &index,
        r,
        k,
        seen_cap: budget.seen_cap,
        shared: &shared,
    };

    let root = Node {
        graph: host,
        protected: 0,
    };
    let open_bound = if budget.parallelism > 1 {
        run_parallel(root, &ctx, budget.parallelism)
    } else {
        run_worker(vec![root], &ctx)
    };

    let nodes_explored = shared.nodes.load(Ordering::Relaxed);
    let (max_edges, witness) = shared.best.into_inner().expect("no poisoned workers");
    if shared.abort.load(Ordering::Relaxed) {
        return Err(Error::SearchBudget {
            lower: max_edges,
            upper: open_bound.max(max_edges),
            nodes: nodes_explored,
        });
    }

    // re-verify the witness before handing it out
    if packing::contains_clique_packing(&witness, r, k) || witness.edge_count() as u64 != max_edges
    {
        return Err(Error::Precondition(
            "internal: witness failed re-verification".into(),
        ));
    }
    Ok(ExtremalResult {
        parts,
        r,
        k,
        max_edges,
        witness,
        nodes_explored,
        elapsed: start.elapsed(),
    })
}

/// Lexicographic numbering of the complete host's edges, used for the
/// 128-bit protection masks.
struct HostEdgeIndex {
    edges: Vec<(usize, usize)>,
    slot: Vec<usize>,
    n: usize,
}

impl HostEdgeIndex {
    fn new(host: &MultipartiteGraph) -> Self {
        let n = host.total_vertices();
        let mut edges = Vec::with_capacity(host.edge_count());
        let mut slot = vec![usize::MAX; n * n];
        for (u, v) in host.edges() {
            let (a, b) = (host.flat(u), host.flat(v));
            slot[a * n + b] = edges.len();
            slot[b * n + a] = edges.len();
            edges.push((a, b));
        }
        HostEdgeIndex { edges, slot, n }
    }

    #[inline]
    fn bit_of(&self, a: usize, b: usize) -> usize {
        self.slot[a * self.n + b]
    }
}

struct Node {
    graph: MultipartiteGraph,
    /// Host-edge bits that must stay present in every descendant.
    protected: u128,
}

struct Shared {
    /// Authoritative best feasible (edge count, witness).
    best: Mutex<(u64, MultipartiteGraph)>,
    /// Fast-path mirror of best.0 for pruning reads.
    incumbent: AtomicU64,
    nodes: AtomicU64,
    abort: AtomicBool,
    deadline: Instant,
    max_nodes: u64,
}

impl Shared {
    fn offer(&self, edges: u64, graph: &MultipartiteGraph) {
        if edges <= self.incumbent.load(Ordering::Relaxed) {
            return;
        }
        let mut best = self.best.lock().expect("no poisoned workers");
        if edges > best.0 {
            best.0 = edges;
            best.1 = graph.clone();
            self.incumbent.store(edges, Ordering::Relaxed);
        }
    }
}

struct SearchContext<'a> {
    index: &'a HostEdgeIndex,
    r: usize,
    k: u64,
    seen_cap: usize,
    shared: &'a Shared,
}

/// Sequential DFS over one stack of nodes. Returns the largest edge count
/// among nodes left unexplored at an abort; 0 when the stack was drained.
fn run_worker(mut stack: Vec<Node>, ctx: &SearchContext) -> u64 {
    let shared = ctx.shared;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    while let Some(node) = stack.pop() {
        if shared.abort.load(Ordering::Relaxed) {
            return drain_bound(Some(node), stack);
        }
        let visited = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited > shared.max_nodes
            || (visited.is_multiple_of(512) && Instant::now() > shared.deadline)
        {
            shared.abort.store(true, Ordering::Relaxed);
            return drain_bound(Some(node), stack);
        }

        let c = node.graph.edge_count() as u64;
        if c <= shared.incumbent.load(Ordering::Relaxed) {
            continue; // descendants only lose edges
        }
        let key = canonical_key(&node.graph, node.protected, ctx.index);
        if seen.contains(&key) {
            continue;
        }
        if seen.len() < ctx.seen_cap {
            seen.insert(key);
        }

        match packing::find_clique_packing(&node.graph, ctx.r, ctx.k) {
            None => shared.offer(c, &node.graph),
            Some(p) => expand(&node, &p, ctx, &mut stack),
        }
    }
    0
}

/// Children of an infeasible node: delete each not-yet-protected edge of
/// the found packing, protecting it for all later siblings. If every
/// packing edge is protected the subtree holds no feasible subgraph.
fn expand(node: &Node, found: &CliquePacking, ctx: &SearchContext, out: &mut Vec<Node>) {
    let g = &node.graph;
    let mut protected = node.protected;
    let mut children = Vec::new();
    for (u, v) in found.edges() {
        let bit = ctx.index.bit_of(g.flat(u), g.flat(v));
        if protected >> bit & 1 == 1 {
            continue;
        }
        let child = g.without_edge(u, v).expect("packing edges exist");
        children.push(Node {
            graph: child,
            protected,
        });
        protected |= 1 << bit;
    }
    // lexicographically first deletion is explored first
    out.extend(children.into_iter().rev());
}

fn drain_bound(popped: Option<Node>, stack: Vec<Node>) -> u64 {
    popped
        .iter()
        .chain(stack.iter())
        .map(|n| n.graph.edge_count() as u64)
        .max()
        .unwrap_or(0)
}

/// Expand breadth-first until there is enough frontier to feed the pool,
/// then let workers steal whole subtrees.
fn run_parallel(root: Node, ctx: &SearchContext, parallelism: usize) -> u64 {
    let target = 4 * parallelism;
    let mut frontier = vec![root];
    let mut expansions = 0;
    while frontier.len() < target && expansions < 10_000 {
        // pop the shallowest node to widen evenly
        let node = frontier.remove(0);
        expansions += 1;
        ctx.shared.nodes.fetch_add(1, Ordering::Relaxed);
        let c = node.graph.edge_count() as u64;
        if c <= ctx.shared.incumbent.load(Ordering::Relaxed) {
            if frontier.is_empty() {
                return 0;
            }
            continue;
        }
        match packing::find_clique_packing(&node.graph, ctx.r, ctx.k) {
            None => {
                ctx.shared.offer(c, &node.graph);
                if frontier.is_empty() {
                    return 0;
                }
            }
            Some(p) => {
                let mut children = Vec::new();
                expand(&node, &p, ctx, &mut children);
                children.reverse(); // keep breadth order shallow-first
                frontier.extend(children);
                if frontier.is_empty() {
                    return 0;
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .expect("thread pool");
    let bounds: Vec<u64> = pool.install(|| {
        use rayon::prelude::*;
        frontier
            .into_par_iter()
            .map(|node| run_worker(vec![node], ctx))
            .collect()
    });
    bounds.into_iter().max().unwrap_or(0)
}

/// A sound canonical form: the graph actually relabeled by within-part
/// row sorting (iterated to a fixpoint or three passes), plus the
/// protection mask carried through the same relabeling. Equal keys mean
/// the subproblems are genuinely isomorphic, so skipping on a hit is
/// always safe; the form is not a complete invariant, which only costs
/// extra work.
fn canonical_key(g: &MultipartiteGraph, protected: u128, index: &HostEdgeIndex) -> Vec<u64> {
    let n = g.total_vertices();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut work = g.clone();
    for _ in 0..3 {
        let mut changed = false;
        for p in 0..work.part_count() {
            let range = work.part_range(p);
            if range.len() <= 1 {
                continue;
            }
            let mut slots: Vec<usize> = range.clone().collect();
            slots.sort_by(|&a, &b| work.row(a).cmp(work.row(b)));
            if slots.iter().enumerate().all(|(i, &s)| s == range.start + i) {
                continue;
            }
            changed = true;
            let mut local: Vec<usize> = (0..n).collect();
            for (pos, &old) in slots.iter().enumerate() {
                local[old] = range.start + pos;
            }
            work = work.relabel_flat(&local);
            for v in perm.iter_mut() {
                *v = local[*v];
            }
        }
        if !changed {
            break;
        }
    }

    let mut key = work.adjacency_words().to_vec();
    let mut relabeled: u128 = 0;
    let mut bits = protected;
    while bits != 0 {
        let bit = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (a, b) = index.edges[bit];
        relabeled |= 1 << index.bit_of(perm[a], perm[b]);
    }
    key.push(relabeled as u64);
    key.push((relabeled >> 64) as u64);
    key
}

/// Best known feasible subgraph to start the incumbent from. Every
/// candidate is re-checked with the detector before use; the edgeless
/// graph is the fallback.
fn seed_incumbent(parts: &PartSizes, r: usize, k: u64) -> (u64, MultipartiteGraph) {
    let sizes = parts.sizes();
    let mut candidates: Vec<MultipartiteGraph> = Vec::new();

    if r == parts.len() && r >= 3 && k <= sizes[0] as u64 {
        if let Ok(spec) = HostSpec::new(parts.clone(), k) {
            if let Ok(cert) = construct::extremal_construction(&spec) {
                candidates.push(cert.graph().clone());
            }
        }
    }
    if r == 3 && parts.len() == 4 {
        if let Ok(cert) = construct::four_partite_triangle_construction(parts, k) {
            candidates.push(cert.graph().clone());
        }
    }
    if r == 2 && k >= 2 && (k - 1) <= sizes[0] as u64 {
        // all edges incident to k−1 vertices of the smallest part
        let mut edges = Vec::new();
        for i in 0..(k - 1) as usize {
            for (p, &size) in sizes.iter().enumerate().skip(1) {
                for j in 0..size {
                    edges.push((VertexId::new(0, i), VertexId::new(p, j)));
                }
            }
        }
        if let Ok(g) = MultipartiteGraph::from_edges(sizes, edges) {
            candidates.push(g);
        }
    }
    if r >= 3 {
        candidates.push(best_group_split(sizes, r - 1));
    }

    let mut best_edges = 0u64;
    let mut best = MultipartiteGraph::edgeless(sizes).expect("valid sizes");
    for cand in candidates {
        let edges = cand.edge_count() as u64;
        if edges > best_edges && !packing::contains_clique_packing(&cand, r, k) {
            best_edges = edges;
            best = cand;
        }
    }
    (best_edges, best)
}

/// Merge the parts into at most `groups` blocks and take every edge
/// between different blocks: the result has no K_{groups+1} at all, hence
/// is feasible for any k. Exhaustively picks the split with the most
/// edges (part counts at desk scale are tiny).
fn best_group_split(sizes: &[usize], groups: usize) -> MultipartiteGraph {
    let l = sizes.len();
    let mut assignment = vec![0usize; l];
    let mut best_assignment = vec![0usize; l];
    let mut best_cross = -1i64;

    fn recurse(
        p: usize,
        used: usize,
        groups: usize,
        sizes: &[usize],
        assignment: &mut Vec<usize>,
        best_cross: &mut i64,
        best_assignment: &mut Vec<usize>,
    ) {
        let l = sizes.len();
        if p == l {
            let mut group_tot = vec![0i64; used];
            for i in 0..l {
                group_tot[assignment[i]] += sizes[i] as i64;
            }
            let total: i64 = group_tot.iter().sum();
            let cross = (total * total - group_tot.iter().map(|&t| t * t).sum::<i64>()) / 2;
            if cross > *best_cross {
                *best_cross = cross;
                best_assignment.clone_from(assignment);
            }
            return;
        }
        // canonical set-partition enumeration: block ids appear in order
        for b in 0..=used.min(groups - 1) {
            assignment[p] = b;
            recurse(
                p + 1,
                used.max(b + 1),
                groups,
                sizes,
                assignment,
                best_cross,
                best_assignment,
            );
        }
    }
    recurse(
        0,
        0,
        groups,
        sizes,
        &mut assignment,
        &mut best_cross,
        &mut best_assignment,
    );

    let mut edges = Vec::new();
    for p in 0..l {
        for q in p + 1..l {
            if best_assignment[p] != best_assignment[q] {
                for i in 0..sizes[p] {
                    for j in 0..sizes[q] {
                        edges.push((VertexId::new(p, i), VertexId::new(q, j)));
                    }
                }
            }
        }
    }
    MultipartiteGraph::from_edges(sizes, edges).expect("valid sizes")
}

/// One row of a formula-versus-oracle sweep.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub spec: HostSpec,
    pub formula: FormulaResult,
    pub oracle: Option<u64>,
    pub error: Option<String>,
    /// Some(equal) when the formula claims exactness and the oracle
    /// finished; None otherwise.
    pub matched: Option<bool>,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Run the oracle against the formula on every spec of the grid. Budget
/// errors are recorded per point; the sweep never aborts early.
pub fn verify_formula_grid(grid: &[HostSpec], budget: &SearchBudget) -> Result<Vec<GridPoint>> {
    let mut out = Vec::with_capacity(grid.len());
    for spec in grid {
        let formula = turan_number(spec)?;
        let point = match extremal_number(spec, budget) {
            Ok(res) => GridPoint {
                spec: spec.canonicalized(),
                matched: formula.is_exact().then_some(res.max_edges == formula.value),
                oracle: Some(res.max_edges),
                error: None,
                nodes: res.nodes_explored,
                elapsed: res.elapsed,
                formula,
            },
            Err(Error::SearchBudget { lower, upper, nodes }) => GridPoint {
                spec: spec.canonicalized(),
                formula,
                oracle: None,
                error: Some(format!("budget exhausted: {lower} <= max <= {upper}")),
                matched: None,
                nodes,
                elapsed: budget.max_time,
            },
            Err(e) => return Err(e),
        };
        out.push(point);
    }
    Ok(out)
}

/// All non-decreasing r-tuples with entries in [1, n_max].
pub fn sorted_tuples(r: usize, n_max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![1usize; r];
    loop {
        out.push(cur.clone());
        let mut p = r;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            if cur[p] < n_max {
                cur[p] += 1;
                let v = cur[p];
                cur[p + 1..r].fill(v); // keep non-decreasing
                break;
            }
        }
    }
}

/// The canonical theorem grid: every sorted r-tuple with entries ≤ n_max,
/// each with every k in [1, n₁].
pub fn theorem_grid(r: usize, n_max: usize) -> Vec<HostSpec> {
    let mut out = Vec::new();
    for sizes in sorted_tuples(r, n_max) {
        let n1 = sizes[0] as u64;
        let parts = PartSizes::new(sizes).expect("grid sizes valid");
        for k in 1..=n1 {
            out.push(HostSpec::new(parts.clone(), k).expect("k >= 1"));
        }
    }
    out
}
