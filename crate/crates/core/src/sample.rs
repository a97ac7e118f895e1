//! Seeded random subgraph generation for identity and inequality checks.
//!
//! All sampling goes through an explicit ChaCha stream so a printed seed
//! reproduces a run exactly, on any platform.

use crate::graph::MultipartiteGraph;
use crate::packing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The one RNG used everywhere a seed flag is accepted.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform-density random subgraph of `host`: a density is drawn once,
/// then each edge is kept independently with that probability. Varying the
/// density across samples exercises sparse and dense regimes alike.
pub fn random_subgraph<R: Rng>(host: &MultipartiteGraph, rng: &mut R) -> MultipartiteGraph {
    let density: f64 = rng.gen_range(0.0..=1.0);
    let kept = host
        .edges()
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect::<Vec<_>>();
    MultipartiteGraph::from_edges(host.part_sizes(), kept)
        .expect("edges of a valid host stay valid")
}

/// A random subgraph thinned until it contains no transversal clique:
/// while the detector finds one, a random edge of it is removed.
pub fn random_clique_free_subgraph<R: Rng>(
    host: &MultipartiteGraph,
    rng: &mut R,
) -> MultipartiteGraph {
    let mut g = random_subgraph(host, rng);
    while let Some(p) = packing::find_packing(&g, 1) {
        let clique = &p.cliques()[0];
        let i = rng.gen_range(0..clique.len());
        let j = rng.gen_range(0..clique.len() - 1);
        let j = if j >= i { j + 1 } else { j };
        g = g
            .without_edge(clique[i], clique[j])
            .expect("clique vertices exist");
    }
    g
}
