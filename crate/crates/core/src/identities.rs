//! Executable counting identities over transversals.
//!
//! Each check computes one side by direct enumeration of all transversals
//! and the other by a closed form; the two agree on every valid input, so
//! any mismatch is an implementation defect, never a property of the
//! graph. Enumeration cost is Θ(Π nᵢ · r²); checks refuse hosts with more
//! than [`TRANSVERSAL_BUDGET`] transversals since they are verification
//! tools, not production paths.

use crate::error::{Error, Result};
use crate::graph::MultipartiteGraph;
use crate::packing::{self, Transversal};

/// Hard cap on transversals enumerated per check invocation.
pub const TRANSVERSAL_BUDGET: u64 = 1_000_000;

/// Per-graph transversal statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSummary {
    /// Σ_{S} w(S) over all transversals.
    pub total_weight: u64,
    /// Number of transversals inducing a complete graph.
    pub clique_count_q: u64,
    /// pair_counts[i][j] = |E(VᵢVⱼ)| for i < j, 0 elsewhere.
    pub pair_counts: Vec<Vec<u64>>,
    /// Π nᵢ.
    pub transversal_count: u64,
}

/// Outcome of one two-route identity evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// Outcome of the clique-count lower bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueBoundCheck {
    pub q: u64,
    pub bound: i128,
    pub holds: bool,
}

fn require_nonempty_parts(g: &MultipartiteGraph) -> Result<()> {
    if let Some(p) = g.part_sizes().iter().position(|&s| s == 0) {
        return Err(Error::Precondition(format!(
            "part {p} is empty; transversal identities degenerate"
        )));
    }
    Ok(())
}

fn transversal_count_checked(g: &MultipartiteGraph) -> Result<u64> {
    let total: u128 = g.part_sizes().iter().map(|&s| s as u128).product();
    if total > TRANSVERSAL_BUDGET as u128 {
        return Err(Error::EnumerationBudget(total, TRANSVERSAL_BUDGET));
    }
    Ok(total as u64)
}

/// Visit every transversal as a slice of flat vertex ids.
fn for_each_transversal(g: &MultipartiteGraph, mut f: impl FnMut(&[usize])) {
    let r = g.part_count();
    let mut flats: Vec<usize> = (0..r).map(|p| g.part_range(p).start).collect();
    let mut idx = vec![0usize; r];
    loop {
        f(&flats);
        let mut p = r;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            flats[p] += 1;
            if idx[p] < g.part_size(p) {
                break;
            }
            idx[p] = 0;
            flats[p] = g.part_range(p).start;
        }
    }
}

fn weight_of_flats(g: &MultipartiteGraph, flats: &[usize]) -> u64 {
    let mut w = 0;
    for (i, &a) in flats.iter().enumerate() {
        for &b in &flats[i + 1..] {
            w += g.has_edge_flat(a, b) as u64;
        }
    }
    w
}

/// w(S): the number of edges induced by the transversal, in [0, C(r,2)].
pub fn weight_of(g: &MultipartiteGraph, s: &Transversal) -> Result<u64> {
    // re-validate against this particular graph
    let s = Transversal::new(g, s.vertices().to_vec())?;
    let flats: Vec<usize> = s.vertices().iter().map(|&v| g.flat(v)).collect();
    Ok(weight_of_flats(g, &flats))
}

/// Σ_S w(S) = Σ_{i<j} |E(VᵢVⱼ)| Π_{ℓ≠i,j} n_ℓ.
///
/// Left side by enumeration, right side in closed form.
pub fn weight_identity_check(g: &MultipartiteGraph) -> Result<IdentityCheck> {
    require_nonempty_parts(g)?;
    transversal_count_checked(g)?;

    let mut lhs: u64 = 0;
    for_each_transversal(g, |flats| lhs += weight_of_flats(g, flats));

    let r = g.part_count();
    let mut rhs: u64 = 0;
    for i in 0..r {
        for j in i + 1..r {
            let others: u64 = (0..r)
                .filter(|&l| l != i && l != j)
                .map(|l| g.part_size(l) as u64)
                .product();
            rhs += g.pair_edge_count(i, j)? as u64 * others;
        }
    }
    Ok(IdentityCheck {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Σ_S |E(G∖S)| = Σ_{i<j} |E(VᵢVⱼ)| (nᵢ−1)(nⱼ−1) Π_{ℓ≠i,j} n_ℓ.
///
/// An edge of VᵢVⱼ survives the deletion of S exactly when neither
/// endpoint is in S. The left side enumerates; each |E(G∖S)| comes from
/// the degree sum over S (edges inside S are subtracted twice, so w(S)
/// restores them).
pub fn deletion_identity_check(g: &MultipartiteGraph) -> Result<IdentityCheck> {
    require_nonempty_parts(g)?;
    transversal_count_checked(g)?;

    let degrees: Vec<u64> = (0..g.total_vertices())
        .map(|f| g.row(f).iter().map(|w| w.count_ones() as u64).sum())
        .collect();
    let total_edges = g.edge_count() as u64;

    let mut lhs: u64 = 0;
    for_each_transversal(g, |flats| {
        let deg_sum: u64 = flats.iter().map(|&f| degrees[f]).sum();
        // |E| + w(S) ≥ Σ deg since |E(G∖S)| ≥ 0
        lhs += total_edges + weight_of_flats(g, flats) - deg_sum;
    });

    let r = g.part_count();
    let mut rhs: u64 = 0;
    for i in 0..r {
        for j in i + 1..r {
            let others: u64 = (0..r)
                .filter(|&l| l != i && l != j)
                .map(|l| g.part_size(l) as u64)
                .product();
            let survivors = (g.part_size(i) as u64 - 1) * (g.part_size(j) as u64 - 1);
            rhs += g.pair_edge_count(i, j)? as u64 * survivors * others;
        }
    }
    Ok(IdentityCheck {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

fn require_almost_balanced(g: &MultipartiteGraph) -> Result<(u64, u64)> {
    require_nonempty_parts(g)?;
    let sizes = g.part_sizes();
    if sizes.len() < 3 {
        return Err(Error::Regime(format!(
            "need r >= 3 parts, got {}",
            sizes.len()
        )));
    }
    if !sizes[1..].windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::Regime(format!(
            "parts 2..r must all have equal size, got {sizes:?}"
        )));
    }
    Ok((sizes[0] as u64, sizes[1] as u64))
}

/// q ≥ Σ_{j≥2} |E(V₁Vⱼ)| n₂^{r−2} + Σ_{2≤i<j} |E(VᵢVⱼ)| n₁ n₂^{r−3}
///     − n₁ n₂^{r−1} (C(r,2)−1),
/// the lower bound on the number of transversal cliques in an
/// almost-balanced host (n₂ = … = n_r).
pub fn clique_count_lower_bound_check(g: &MultipartiteGraph) -> Result<CliqueBoundCheck> {
    let (n1, n2) = require_almost_balanced(g)?;
    transversal_count_checked(g)?;
    let r = g.part_count();
    let choose2 = (r * (r - 1) / 2) as i128;

    let q = packing::count_cliques(g);

    let mut bound: i128 = 0;
    for j in 1..r {
        bound += g.pair_edge_count(0, j)? as i128 * (n2 as i128).pow(r as u32 - 2);
    }
    for i in 1..r {
        for j in i + 1..r {
            bound +=
                g.pair_edge_count(i, j)? as i128 * n1 as i128 * (n2 as i128).pow(r as u32 - 3);
        }
    }
    bound -= n1 as i128 * (n2 as i128).pow(r as u32 - 1) * (choose2 - 1);

    Ok(CliqueBoundCheck {
        q,
        bound,
        holds: q as i128 >= bound,
    })
}

/// For a K_r-free almost-balanced subgraph,
/// Σ_S w(S) ≤ (C(r,2)−1) n₁ n₂^{r−1}. Containing a K_r is a precondition
/// error, not a `false`.
pub fn kr_free_weight_bound_check(g: &MultipartiteGraph) -> Result<bool> {
    let (n1, n2) = require_almost_balanced(g)?;
    transversal_count_checked(g)?;
    if packing::contains_packing(g, 1) {
        return Err(Error::Precondition(
            "graph contains a transversal clique; the bound applies to clique-free graphs".into(),
        ));
    }
    let r = g.part_count();
    let choose2 = (r * (r - 1) / 2) as u64;

    let mut total: u64 = 0;
    for_each_transversal(g, |flats| total += weight_of_flats(g, flats));

    Ok(total <= (choose2 - 1) * n1 * n2.pow(r as u32 - 1))
}

/// All transversal statistics of a graph in one pass.
pub fn weight_summary(g: &MultipartiteGraph) -> Result<WeightSummary> {
    require_nonempty_parts(g)?;
    let transversal_count = transversal_count_checked(g)?;
    let r = g.part_count();
    let choose2 = (r * (r - 1) / 2) as u64;

    let mut total_weight = 0u64;
    let mut clique_count_q = 0u64;
    for_each_transversal(g, |flats| {
        let w = weight_of_flats(g, flats);
        total_weight += w;
        clique_count_q += (w == choose2) as u64;
    });

    let mut pair_counts = vec![vec![0u64; r]; r];
    for (i, row) in pair_counts.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().skip(i + 1) {
            *slot = g.pair_edge_count(i, j)? as u64;
        }
    }
    Ok(WeightSummary {
        total_weight,
        clique_count_q,
        pair_counts,
        transversal_count,
    })
}
