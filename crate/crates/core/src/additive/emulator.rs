use rayon::prelude::*;

use crate::clustering::cgk_clustering;
use crate::error::Result;
use crate::graph::{bfs_distances, Dist, Emulator, Graph, Vertex, UNREACHABLE};
use crate::spanner::{SourceSet, SpannerMeta};

#[derive(Clone, Debug)]
pub struct EmulatorRun {
    pub emulator: Emulator,
    pub meta: SpannerMeta,
}

/// Unit-weight clustering subgraph plus, for every source and cluster, one
/// weighted edge to the cluster's nearest member.
pub fn build_sourcewise_emulator2(g: &Graph, sources: &SourceSet) -> Result<EmulatorRun> {
    let n = g.n();
    let epsilon = sources.epsilon();
    let clustering = cgk_clustering(g, epsilon / 2.0);
    let mut h = Emulator::new(n);
    for e in &clustering.edges {
        h.insert(e.u(), e.v(), 1)?;
    }
    let base = h.m();

    let shortcuts: Vec<(Vertex, Vertex, Dist)> = sources
        .as_slice()
        .par_iter()
        .flat_map_iter(|&s| {
            let dist = bfs_distances(g, s);
            clustering
                .clusters
                .iter()
                .filter_map(|members| members.iter().map(|&v| (dist[v as usize], v)).min())
                .filter(|&(d, _)| d != 0 && d != UNREACHABLE)
                .map(|(d, v)| (s, v, d))
                .collect::<Vec<_>>()
        })
        .collect();
    for (s, v, d) in shortcuts {
        h.insert(s, v, d)?;
    }

    let mut meta = SpannerMeta::new("emulator", None)
        .param("epsilon", epsilon)
        .param("gamma", epsilon / 2.0)
        .param("clusters", clustering.cluster_count() as f64);
    meta.phases.push(("clustering".into(), base));
    meta.phases.push(("source_shortcuts".into(), h.m() - base));
    Ok(EmulatorRun { emulator: h, meta })
}
