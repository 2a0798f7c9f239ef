use std::collections::HashMap;

use rayon::prelude::*;

use crate::clustering::cgk_clustering;
use crate::error::{Error, Result};
use crate::graph::{
    bfs_bounded, bfs_distances, BfsTree, Dist, Graph, GrowingGraph, Vertex, UNREACHABLE,
};
use crate::rng::ceil_pow;
use crate::spanner::{SourceSet, Spanner, SpannerMeta};

/// `+2` spanner for all pairs inside `terminals`: the clustering subgraph at
/// `γ = log|Z| / (2 log n)`, then the canonical shortest path of every pair,
/// shortest first, that is still more than two hops too long.
pub fn build_subsetwise_plus2(g: &Graph, terminals: &[Vertex]) -> Result<Spanner> {
    let n = g.n();
    let mut z: Vec<Vertex> = terminals.to_vec();
    z.sort_unstable();
    z.dedup();
    if z.is_empty() {
        return Err(Error::MissingSources("terminal set is empty".into()));
    }
    for &v in &z {
        g.check_vertex(v)?;
    }
    let kappa = if n < 2 {
        1.0
    } else {
        ((z.len() as f64).ln() / (n as f64).ln()).clamp(0.0, 1.0)
    };
    let clustering = cgk_clustering(g, kappa / 2.0);

    let dists: Vec<Vec<Dist>> = z.par_iter().map(|&v| bfs_distances(g, v)).collect();
    let mut pairs: Vec<(Dist, usize, usize)> = Vec::new();
    for (i, row) in dists.iter().enumerate() {
        for j in i + 1..z.len() {
            let d = row[z[j] as usize];
            if d != UNREACHABLE {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_unstable();

    let mut h = GrowingGraph::from_edge_set(n, &clustering.edges);
    let mut trees: HashMap<usize, BfsTree> = HashMap::new();
    let mut bought = 0usize;
    for (d, i, j) in pairs {
        let limit = d + 2;
        let near = bfs_bounded(&h, &[z[i]], Some(limit));
        if near.reached(z[j]) {
            continue;
        }
        let tree = trees
            .entry(i)
            .or_insert_with(|| bfs_bounded(g, &[z[i]], None));
        for e in tree.edges_up(z[j]) {
            h.insert(e);
        }
        bought += 1;
    }

    let meta = SpannerMeta::new("subset", None)
        .param("terminals", z.len() as f64)
        .param("gamma", kappa / 2.0)
        .param("clusters", clustering.cluster_count() as f64)
        .param("paths_bought", bought as f64);
    let mut spanner = Spanner::new(n, meta);
    spanner.absorb("clustering", clustering.edges.iter().copied());
    spanner.absorb("paths", h.edge_set());
    Ok(spanner)
}

/// `+4` sourcewise spanner: clustering at `ε/2`, then a subsetwise `+2`
/// spanner over the hubs and the sources.
pub fn build_sourcewise_additive4(g: &Graph, sources: &SourceSet) -> Result<Spanner> {
    let n = g.n();
    let epsilon = sources.epsilon();
    let clustering = cgk_clustering(g, epsilon / 2.0);
    let mut terminals: Vec<Vertex> = clustering.hubs.clone();
    terminals.extend_from_slice(sources.as_slice());
    let inner = build_subsetwise_plus2(g, &terminals)?;

    let mut meta = SpannerMeta::new("sw4", None)
        .param("epsilon", epsilon)
        .param("sources", sources.len() as f64)
        .param("hubs", clustering.hubs.len() as f64)
        .param("clusters", clustering.cluster_count() as f64);
    let floor = ceil_pow(n as f64, 2.0 / 3.0);
    if (sources.len() as u64) < floor {
        meta.warnings.push(format!(
            "{} sources is below n^(2/3) = {floor}; the size guarantee does not apply",
            sources.len()
        ));
    }
    let mut spanner = Spanner::new(n, meta);
    spanner.absorb("clustering", clustering.edges.iter().copied());
    spanner.absorb("subsetwise", inner.edges);
    Ok(spanner)
}
