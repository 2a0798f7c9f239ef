//! Spanners with stretch `2k-1` on source-adjacent pairs and `2k-2` on all
//! other source-to-vertex pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::clustering::{cluster_sequence, ClusterSequence};
use crate::error::{Error, Result};
use crate::graph::{bfs_bounded, Edge, Graph};
use crate::spanner::{SourceSet, Spanner, SpannerMeta};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SwParams {
    pub k: usize,
    pub epsilon: f64,
    /// `epsilon / k`
    pub mu: f64,
    /// Suffix length `2k² + 3k` kept on source-to-center paths.
    pub ell_k: usize,
}

pub fn sw_params(k: usize, sources: &SourceSet) -> Result<SwParams> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k = {k}; the sourcewise construction needs k >= 2"
        )));
    }
    let epsilon = sources.epsilon();
    Ok(SwParams {
        k,
        epsilon,
        mu: epsilon / k as f64,
        ell_k: 2 * k * k + 3 * k,
    })
}

#[derive(Clone, Debug)]
pub struct SwRun {
    pub spanner: Spanner,
    pub params: SwParams,
    pub clusters: ClusterSequence,
}

pub fn build_sourcewise_mult(g: &Graph, sources: &SourceSet, k: usize, seed: u64) -> Result<SwRun> {
    let params = sw_params(k, sources)?;
    let clusters = cluster_sequence(g, k, params.mu, seed)?;

    let meta = SpannerMeta::new("swmult", Some(seed))
        .param("k", k as f64)
        .param("epsilon", params.epsilon)
        .param("mu", params.mu)
        .param("ell_k", params.ell_k as f64)
        .param("sources", sources.len() as f64);
    let mut spanner = Spanner::new(g.n(), meta);
    spanner.absorb("clusters", clusters.spanner.iter().copied());

    let centers = clusters.centers(k - 1);
    let paths: Vec<Edge> = sources
        .as_slice()
        .par_iter()
        .flat_map_iter(|&s| {
            let tree = bfs_bounded(g, &[s], None);
            let mut out = Vec::new();
            for &z in centers {
                out.extend(tree.edges_up(z).take(params.ell_k));
            }
            out
        })
        .collect();
    spanner.absorb("source_paths", paths);

    Ok(SwRun {
        spanner,
        params,
        clusters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_graph, random_graph};

    #[test]
    fn params_examples() {
        let s = SourceSet::all(64).unwrap();
        assert_eq!(sw_params(2, &s).unwrap().ell_k, 14);
        let p = sw_params(3, &s).unwrap();
        assert_eq!(p.ell_k, 27);
        assert_eq!(p.epsilon, 1.0);
        assert!((p.mu - 1.0 / 3.0).abs() < 1e-15);
        assert!(sw_params(1, &s).is_err());
    }

    #[test]
    fn trees_are_kept_whole_for_all_sources() {
        let g = path_graph(25);
        let s = SourceSet::all(25).unwrap();
        assert_eq!(
            build_sourcewise_mult(&g, &s, 2, 1).unwrap().spanner.edges,
            g.edge_set()
        );
    }

    #[test]
    fn single_source_is_allowed() {
        let g = random_graph(60, 0.1, 1).unwrap();
        let s = SourceSet::new(60, [7]).unwrap();
        let run = build_sourcewise_mult(&g, &s, 2, 1).unwrap();
        assert_eq!(run.params.mu, 0.0);
        g.check_subgraph(&run.spanner.edges).unwrap();
    }
}
