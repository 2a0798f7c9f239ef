//! Spanners with stretch `2k-1` on edges and `k` on every other pair.

use rayon::prelude::*;
use serde::Serialize;

use crate::clustering::{cluster_sequence, ClusterSequence};
use crate::error::{Error, Result};
use crate::graph::{bfs, bfs_bounded, Edge, Graph, Path, Vertex, UNREACHABLE};
use crate::spanner::{Spanner, SpannerMeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HybridParams {
    pub k: usize,
    /// `⌊k/2⌋`
    pub t: usize,
    /// `k - 1 - t`
    pub t_prime: usize,
    /// Suffix length `7t + 8t²` kept on center-to-center paths.
    pub ell_t: usize,
}

pub fn hybrid_params(k: usize) -> Result<HybridParams> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k = {k}; the hybrid construction needs k >= 2"
        )));
    }
    let t = k / 2;
    Ok(HybridParams {
        k,
        t,
        t_prime: k - 1 - t,
        ell_t: 7 * t + 8 * t * t,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HybridOptions {
    /// Also keep the suffix at the source end of every added path.
    pub suffix_both: bool,
}

#[derive(Clone, Debug)]
pub struct HybridRun {
    pub spanner: Spanner,
    pub params: HybridParams,
    pub clusters: ClusterSequence,
}

/// A shortest path between closest members `u1 ∈ c1`, `u2 ∈ c2`, ties broken
/// by `(distance, u1, u2)`. Runs from `u1` to `u2`; `None` if the sets lie
/// in different components.
pub fn closest_pair_path(g: &Graph, c1: &[Vertex], c2: &[Vertex]) -> Result<Option<Path>> {
    let tree = bfs(g, c1)?;
    for &v in c2 {
        g.check_vertex(v)?;
    }
    let best = c2
        .iter()
        .filter(|&&v| tree.dist[v as usize] != UNREACHABLE)
        .min_by_key(|&&v| (tree.dist[v as usize], tree.owner[v as usize], v));
    Ok(best.and_then(|&v| tree.path_to(v)))
}

/// Up to `ell` edges on each side of a tree path ending at `v`: the ones
/// nearest `v`, and with `both` also the ones nearest the root.
fn tree_suffix(
    tree: &crate::graph::BfsTree,
    v: Vertex,
    ell: usize,
    both: bool,
    out: &mut Vec<Edge>,
) {
    out.extend(tree.edges_up(v).take(ell));
    if both {
        let len = tree.dist[v as usize] as usize;
        out.extend(tree.edges_up(v).skip(len.saturating_sub(ell)));
    }
}

pub fn build_hybrid(g: &Graph, k: usize, seed: u64) -> Result<HybridRun> {
    build_hybrid_with(g, k, seed, HybridOptions::default())
}

pub fn build_hybrid_with(
    g: &Graph,
    k: usize,
    seed: u64,
    options: HybridOptions,
) -> Result<HybridRun> {
    let params = hybrid_params(k)?;
    let mu = 1.0 / k as f64;
    let clusters = cluster_sequence(g, k, mu, seed)?;

    let meta = SpannerMeta::new("hybrid", Some(seed))
        .param("k", k as f64)
        .param("t", params.t as f64)
        .param("t_prime", params.t_prime as f64)
        .param("ell_t", params.ell_t as f64)
        .param("mu", mu)
        .param("suffix_both", f64::from(u8::from(options.suffix_both)));
    let mut spanner = Spanner::new(g.n(), meta);
    spanner.absorb("clusters", clusters.spanner.iter().copied());

    // center-to-center suffixes, one BFS per source center
    let sources = clusters.centers(params.t_prime);
    let targets = clusters.centers(params.t);
    let e2: Vec<Edge> = sources
        .par_iter()
        .flat_map_iter(|&zi| {
            let tree = bfs_bounded(g, &[zi], None);
            let mut out = Vec::new();
            for &zj in targets {
                if tree.reached(zj) {
                    tree_suffix(&tree, zj, params.ell_t, options.suffix_both, &mut out);
                }
            }
            out
        })
        .collect();
    spanner.absorb("center_paths", e2);

    // closest-pair suffixes between clusters of complementary levels
    let mut e3 = Vec::new();
    for tau in 0..k {
        let ell = if tau == params.t || tau == params.t_prime {
            params.ell_t
        } else {
            2 * k - 1
        };
        let from: Vec<Vec<Vertex>> = clusters.level(tau).clusters().into_values().collect();
        let to: Vec<Vec<Vertex>> = clusters
            .level(k - 1 - tau)
            .clusters()
            .into_values()
            .collect();
        let part: Vec<Edge> = from
            .par_iter()
            .flat_map_iter(|c1| {
                let tree = bfs_bounded(g, c1, None);
                let mut out = Vec::new();
                for c2 in &to {
                    let best = c2
                        .iter()
                        .filter(|&&v| tree.reached(v))
                        .min_by_key(|&&v| (tree.dist[v as usize], tree.owner[v as usize], v));
                    if let Some(&u2) = best {
                        tree_suffix(&tree, u2, ell, options.suffix_both, &mut out);
                    }
                }
                out
            })
            .collect();
        e3.extend(part);
    }
    spanner.absorb("cluster_paths", e3);

    Ok(HybridRun {
        spanner,
        params,
        clusters,
    })
}
