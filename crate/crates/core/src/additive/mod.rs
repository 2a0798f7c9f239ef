//! Additive sourcewise spanners and emulators built on hub clusterings.

mod emulator;
mod pathbuy;
mod subsetwise;

use serde::Serialize;

pub use emulator::{build_sourcewise_emulator2, EmulatorRun};
pub use pathbuy::{
    build_sourcewise_additive, build_sourcewise_additive_with, compute_value, AdditiveRun,
    BuyRecord,
};
pub use subsetwise::{build_sourcewise_additive4, build_subsetwise_plus2};

use crate::error::{Error, Result};
use crate::graph::{bfs_bounded, Dist, EdgeSet, Graph, Vertex};
use crate::rng::ceil_pow;
use crate::spanner::SourceSet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AdditiveParams {
    pub k: usize,
    pub epsilon: f64,
    /// Degree at which a vertex counts as heavy: `⌈n^{(kε+1)/(2k+2)}⌉`.
    pub y: usize,
    /// Heavy-vertex count from which a pair counts as long:
    /// `⌈n ln n / Y²⌉`.
    pub l: usize,
    /// `(2L)^{1/k}`
    pub phi: f64,
}

pub fn additive_params(g: &Graph, sources: &SourceSet, k: usize) -> Result<AdditiveParams> {
    let n = g.n();
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "graph needs at least 2 vertices".into(),
        ));
    }
    let epsilon = sources.epsilon();
    let kf = k as f64;
    let y = (ceil_pow(n as f64, (kf * epsilon + 1.0) / (2.0 * kf + 2.0)) as usize).max(1);
    let nf = n as f64;
    let l = ((nf * nf.ln() / (y * y) as f64).ceil() as usize).max(1);
    let phi = (2.0 * l as f64).powf(1.0 / kf);
    Ok(AdditiveParams {
        k,
        epsilon,
        y,
        l,
        phi,
    })
}

/// A source-to-vertex pair with the number of heavy vertices on its
/// canonical shortest path (endpoints included).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairClass {
    pub source: Vertex,
    pub target: Vertex,
    pub dist: Dist,
    pub heavy_count: usize,
    pub is_long: bool,
}

pub fn is_heavy(g: &Graph, p: &AdditiveParams, v: Vertex) -> bool {
    g.degree(v) >= p.y
}

/// Every connected `(s, v)` with `v != s`, ordered by source then target.
pub fn classify_pairs(g: &Graph, sources: &SourceSet, p: &AdditiveParams) -> Vec<PairClass> {
    let mut out = Vec::new();
    for &s in sources.as_slice() {
        let tree = bfs_bounded(g, &[s], None);
        let mut order: Vec<Vertex> = g.vertices().filter(|&v| tree.reached(v)).collect();
        order.sort_by_key(|&v| tree.dist[v as usize]);
        let mut heavy = vec![0usize; g.n()];
        for &v in &order {
            let own = usize::from(is_heavy(g, p, v));
            heavy[v as usize] = own + tree.parent[v as usize].map_or(0, |u| heavy[u as usize]);
        }
        for v in g.vertices() {
            if v != s && tree.reached(v) {
                let heavy_count = heavy[v as usize];
                out.push(PairClass {
                    source: s,
                    target: v,
                    dist: tree.dist[v as usize],
                    heavy_count,
                    is_long: heavy_count >= p.l,
                });
            }
        }
    }
    out
}

/// Edges with at least one light endpoint.
pub fn light_edges(g: &Graph, p: &AdditiveParams) -> EdgeSet {
    g.edges()
        .filter(|e| !is_heavy(g, p, e.u()) || !is_heavy(g, p, e.v()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_path, random_graph};

    #[test]
    fn params_example() {
        let g = Graph::empty(1024);
        let s = SourceSet::sample(1024, 32, 1).unwrap();
        let p = additive_params(&g, &s, 1).unwrap();
        assert_eq!(p.y, 14);
        assert_eq!(p.l, 37);
        assert_eq!(p.phi, 74.0);
    }

    #[test]
    fn low_degree_graphs_have_only_short_pairs() {
        let g = crate::graph::cycle_graph(30);
        let s = SourceSet::new(30, [0, 5]).unwrap();
        let p = additive_params(&g, &s, 1).unwrap();
        assert!(p.y > 2);
        assert!(classify_pairs(&g, &s, &p)
            .iter()
            .all(|c| !c.is_long && c.heavy_count == 0));
        assert_eq!(light_edges(&g, &p), g.edge_set());
    }

    #[test]
    fn threshold_one_makes_heavy_paths_long() {
        let g = crate::graph::star_graph(6);
        let s = SourceSet::new(6, [1]).unwrap();
        let mut p = additive_params(&g, &s, 1).unwrap();
        p.y = 5;
        p.l = 1;
        let pairs = classify_pairs(&g, &s, &p);
        assert!(pairs.iter().all(|c| c.is_long && c.heavy_count == 1));
    }

    #[test]
    fn heavy_counts_match_path_walk() {
        let g = random_graph(256, 0.1, 6).unwrap();
        let s = SourceSet::sample(256, 16, 6).unwrap();
        let p = additive_params(&g, &s, 1).unwrap();
        for c in classify_pairs(&g, &s, &p) {
            let path = canonical_path(&g, c.source, c.target).unwrap().unwrap();
            let walked = path
                .vertices()
                .iter()
                .filter(|&&v| is_heavy(&g, &p, v))
                .count();
            assert_eq!(walked, c.heavy_count);
            assert_eq!(path.len(), c.dist as usize);
        }
    }
}
