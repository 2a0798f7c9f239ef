//! Fixed benchmark instances.

use hybrid_spanners::graph::random_graph;
use hybrid_spanners::{Graph, SourceSet};

/// `G(n, p)` with average degree about `degree`, plus `⌈n^eps⌉` sources,
/// all drawn under `seed`.
pub fn instance(n: usize, degree: f64, eps: f64, seed: u64) -> (Graph, SourceSet) {
    let g = random_graph(n, degree / (n as f64 - 1.0), seed).expect("valid parameters");
    let count = ((n as f64).powf(eps).ceil() as usize).clamp(1, n);
    let s = SourceSet::sample(n, count, seed).expect("valid source count");
    (g, s)
}
