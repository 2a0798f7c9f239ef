use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{additive_params, classify_pairs, light_edges, AdditiveParams, PairClass};
use crate::clustering::{cgk_clustering, CgkClustering};
use crate::error::{Error, Result};
use crate::graph::{
    bfs_bounded, bfs_distances, Adjacency, BfsTree, Dist, Edge, EdgeSet, Graph, GrowingGraph,
    Vertex, UNREACHABLE,
};
use crate::rng;
use crate::spanner::{SourceSet, Spanner, SpannerMeta};

/// A path bought at positive cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuyRecord {
    pub source: Vertex,
    pub target: Vertex,
    pub level: usize,
    pub cost: usize,
    pub value: usize,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct AdditiveRun {
    pub spanner: Spanner,
    pub params: AdditiveParams,
    /// Light edges plus the sampled BFS trees.
    pub ha: EdgeSet,
    /// Light edges, the clustering subgraph and every bought path.
    pub hb: EdgeSet,
    pub pairs: Vec<PairClass>,
    pub buys: Vec<BuyRecord>,
    /// Short pairs already served at cost 0, per level.
    pub free_per_level: Vec<usize>,
    /// Number of samples drawn for the BFS roots.
    pub attempts: usize,
    /// Long pairs still beyond `+2k` after the last attempt.
    pub long_failures: usize,
}

/// Number of clusters met by `path` strictly earlier along the path than
/// their distance from `path`'s first vertex in `current`.
pub fn compute_value<A: Adjacency + ?Sized>(
    path: &[Vertex],
    clustering: &CgkClustering,
    current: &A,
) -> usize {
    let dist = bfs_distances(current, path[0]);
    let near = cluster_distances(clustering, &dist);
    value_of(path, clustering, &near)
}

/// Per cluster: nearest member as `(distance, id)`.
fn cluster_distances(c: &CgkClustering, dist: &[Dist]) -> Vec<(Dist, Vertex)> {
    c.clusters
        .iter()
        .map(|members| {
            members
                .iter()
                .map(|&v| (dist[v as usize], v))
                .min()
                .expect("non-empty cluster")
        })
        .collect()
}

fn value_of(path: &[Vertex], c: &CgkClustering, near: &[(Dist, Vertex)]) -> usize {
    let mut first: HashMap<usize, usize> = HashMap::new();
    for (i, &v) in path.iter().enumerate() {
        if let Some(id) = c.cluster_of[v as usize] {
            first.entry(id).or_insert(i);
        }
    }
    first
        .iter()
        .filter(|&(&id, &pos)| (pos as u64) < u64::from(near[id].0))
        .count()
}

fn remove_loops(path: Vec<Vertex>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(path.len());
    let mut index: HashMap<Vertex, usize> = HashMap::new();
    for v in path {
        if let Some(&i) = index.get(&v) {
            for w in out.drain(i + 1..) {
                index.remove(&w);
            }
        } else {
            index.insert(v, out.len());
            out.push(v);
        }
    }
    out
}

/// Cuts every cluster down to at most three path vertices by replacing the
/// stretch between its first and last occurrence with a short hub route.
fn limit_cluster_visits(mut path: Vec<Vertex>, c: &CgkClustering) -> Vec<Vertex> {
    loop {
        path = remove_loops(path);
        let mut seen: HashMap<usize, (usize, usize, usize)> = HashMap::new();
        for (i, &v) in path.iter().enumerate() {
            if let Some(id) = c.cluster_of[v as usize] {
                let entry = seen.entry(id).or_insert((i, i, 0));
                entry.1 = i;
                entry.2 += 1;
            }
        }
        let crowded = seen
            .values()
            .filter(|e| e.2 >= 4)
            .min_by_key(|e| e.0)
            .copied();
        let Some((a, b, _)) = crowded else {
            return path;
        };
        let route = c.route(path[a], path[b]);
        path.splice(a..=b, route);
    }
}

/// The current source with its BFS tree in the partial spanner and, per
/// cluster, the nearest member as `(distance, id)`.
type SourceView = (Vertex, BfsTree, Vec<(Dist, Vertex)>);

struct PathBuyer<'a> {
    g: &'a Graph,
    clustering: &'a CgkClustering,
    params: &'a AdditiveParams,
    hb: GrowingGraph,
    view: Option<SourceView>,
    buys: Vec<BuyRecord>,
    free_per_level: Vec<usize>,
}

impl PathBuyer<'_> {
    fn refresh(&mut self, s: Vertex) {
        if self.view.as_ref().is_some_and(|v| v.0 == s) {
            return;
        }
        let tree = bfs_bounded(&self.hb, &[s], None);
        let near = cluster_distances(self.clustering, &tree.dist);
        self.view = Some((s, tree, near));
    }

    fn missing(&self, path: &[Vertex]) -> Vec<usize> {
        (0..path.len() - 1)
            .filter(|&i| !self.hb.has_edge(path[i], path[i + 1]))
            .collect()
    }

    fn check_invariants(
        &self,
        path: &[Vertex],
        dist: usize,
        level: usize,
        cost: usize,
    ) -> Result<()> {
        let (s, t) = (path[0], *path.last().unwrap());
        let fail = |what: String| {
            Err(Error::Invariant(format!(
                "pair ({s}, {t}) level {level}: {what}"
            )))
        };
        if path.len() - 1 > dist + 2 * level {
            return fail(format!(
                "length {} above {} + {}",
                path.len() - 1,
                dist,
                2 * level
            ));
        }
        let mut per_cluster: HashMap<usize, usize> = HashMap::new();
        for &v in path {
            if let Some(id) = self.clustering.cluster_of[v as usize] {
                *per_cluster.entry(id).or_default() += 1;
            }
        }
        if let Some((id, n)) = per_cluster.into_iter().find(|&(_, n)| n > 3) {
            return fail(format!("cluster {id} holds {n} path vertices"));
        }
        let cap = self.params.l as f64 / self.params.phi.powi(level as i32);
        if cost as f64 > cap + 1e-9 {
            return fail(format!("cost {cost} above {cap:.3}"));
        }
        Ok(())
    }

    /// Runs the level loop for one short pair, buying exactly one path.
    fn serve(&mut self, s: Vertex, t: Vertex, shortest: Vec<Vertex>) -> Result<()> {
        let dist = shortest.len() - 1;
        let mut path = shortest;
        for level in 0..=self.params.k {
            let missing = self.missing(&path);
            let cost = missing.len();
            self.check_invariants(&path, dist, level, cost)?;
            if cost == 0 {
                self.free_per_level[level] += 1;
                return Ok(());
            }
            self.refresh(s);
            let (_, tree, near) = self.view.as_ref().unwrap();
            let value = value_of(&path, self.clustering, near);
            if cost as f64 <= 3.0 * self.params.phi * value as f64 {
                for &i in &missing {
                    self.hb.insert(Edge::new(path[i], path[i + 1]));
                }
                self.buys.push(BuyRecord {
                    source: s,
                    target: t,
                    level,
                    cost,
                    value,
                    length: path.len() - 1,
                });
                self.view = None;
                return Ok(());
            }
            if level == self.params.k {
                break;
            }

            // keep the longest suffix with ⌊cost/φ⌋ missing edges
            let q = (cost as f64 / self.params.phi).floor() as usize;
            let start = missing[missing.len() - 1 - q] + 1;
            let pick = (start..path.len()).rev().find(|&i| {
                self.clustering.cluster_of[path[i] as usize]
                    .is_some_and(|id| u64::from(near[id].0) <= i as u64)
            });
            let Some(i) = pick else {
                return Err(Error::Invariant(format!(
                    "pair ({s}, {t}) level {level}: no cluster to reroute through"
                )));
            };
            let x = path[i];
            let id = self.clustering.cluster_of[x as usize].unwrap();
            let y = near[id].1;
            let mut next = tree
                .path_to(y)
                .expect("cluster reached in spanner")
                .into_vertices();
            next.extend(self.clustering.route(y, x).into_iter().skip(1));
            next.extend_from_slice(&path[i + 1..]);
            path = limit_cluster_visits(next, self.clustering);
        }
        Err(Error::Invariant(format!(
            "pair ({s}, {t}): positive cost at the last level"
        )))
    }
}

pub fn build_sourcewise_additive(
    g: &Graph,
    sources: &SourceSet,
    k: usize,
    seed: u64,
) -> Result<AdditiveRun> {
    build_sourcewise_additive_with(g, sources, k, seed, 0)
}

/// Like [`build_sourcewise_additive`], but redraws the BFS roots up to
/// `retries` times while some long pair is beyond `+2k`.
pub fn build_sourcewise_additive_with(
    g: &Graph,
    sources: &SourceSet,
    k: usize,
    seed: u64,
    retries: usize,
) -> Result<AdditiveRun> {
    let params = additive_params(g, sources, k)?;
    let n = g.n();
    let pairs = classify_pairs(g, sources, &params);
    let h0 = light_edges(g, &params);

    // short pairs: clustering and path buying
    let gamma = (params.y as f64).ln() / (n as f64).ln();
    let clustering = cgk_clustering(g, gamma);
    let mut start = h0.clone();
    start.extend(clustering.edges.iter().copied());
    let mut buyer = PathBuyer {
        g,
        clustering: &clustering,
        params: &params,
        hb: GrowingGraph::from_edge_set(n, &start),
        view: None,
        buys: Vec::new(),
        free_per_level: vec![0; k + 1],
    };
    let mut current: Option<(Vertex, BfsTree)> = None;
    for pair in pairs.iter().filter(|p| !p.is_long) {
        if current.as_ref().map(|c| c.0) != Some(pair.source) {
            current = Some((pair.source, bfs_bounded(buyer.g, &[pair.source], None)));
        }
        let tree = &current.as_ref().unwrap().1;
        let shortest = tree
            .path_to(pair.target)
            .expect("connected pair")
            .into_vertices();
        buyer.serve(pair.source, pair.target, shortest)?;
    }
    let hb = buyer.hb.edge_set();
    let (buys, free_per_level) = (buyer.buys, buyer.free_per_level);

    // long pairs: BFS trees from a random root sample
    let probability = (9.0 * params.y as f64 / n as f64).min(1.0);
    let long_sources: Vec<Vertex> = {
        let mut v: Vec<Vertex> = pairs
            .iter()
            .filter(|p| p.is_long)
            .map(|p| p.source)
            .collect();
        v.dedup();
        v
    };
    let mut attempt = 0;
    let (ha, long_failures) = loop {
        let mut rng = rng::stream(seed, &format!("additive/roots/{attempt}"));
        let roots: Vec<Vertex> = g
            .vertices()
            .filter(|_| rng.gen::<f64>() < probability)
            .collect();
        let trees: Vec<Edge> = roots
            .par_iter()
            .flat_map_iter(|&z| bfs_bounded(g, &[z], None).tree_edges().collect::<Vec<_>>())
            .collect();
        let mut ha = h0.clone();
        ha.extend(trees);

        let mut union = ha.clone();
        union.extend(hb.iter().copied());
        let h = Graph::from_edge_set(n, &union);
        let failures: usize = long_sources
            .par_iter()
            .map(|&s| {
                let d = bfs_distances(&h, s);
                pairs
                    .iter()
                    .filter(|p| p.is_long && p.source == s)
                    .filter(|p| {
                        let dh = d[p.target as usize];
                        dh == UNREACHABLE || dh as usize > p.dist as usize + 2 * k
                    })
                    .count()
            })
            .sum();
        attempt += 1;
        if failures == 0 || attempt > retries {
            break (ha, failures);
        }
    };

    let mut meta = SpannerMeta::new("swadd", Some(seed))
        .param("k", k as f64)
        .param("epsilon", params.epsilon)
        .param("Y", params.y as f64)
        .param("L", params.l as f64)
        .param("phi", params.phi)
        .param("root_probability", probability)
        .param("attempts", attempt as f64)
        .param(
            "long_pairs",
            pairs.iter().filter(|p| p.is_long).count() as f64,
        )
        .param(
            "short_pairs",
            pairs.iter().filter(|p| !p.is_long).count() as f64,
        )
        .param("clusters", clustering.cluster_count() as f64);
    if long_failures > 0 {
        meta.warnings.push(format!(
            "{long_failures} long pairs exceed +{} after {attempt} samples",
            2 * k
        ));
    }
    let mut spanner = Spanner::new(n, meta);
    spanner.absorb("light_edges", h0.iter().copied());
    spanner.absorb("bfs_trees", ha.iter().copied());
    spanner.absorb("clustering", clustering.edges.iter().copied());
    spanner.absorb("bought_paths", hb.iter().copied());

    Ok(AdditiveRun {
        spanner,
        params,
        ha,
        hb,
        pairs,
        buys,
        free_per_level,
        attempts: attempt,
        long_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph, random_graph};

    #[test]
    fn loops_are_cut() {
        assert_eq!(remove_loops(vec![0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(remove_loops(vec![0, 1, 2, 0, 4]), vec![0, 4]);
        assert_eq!(remove_loops(vec![5]), vec![5]);
    }

    #[test]
    fn value_counts_strictly_closer_clusters() {
        // path 0-1-...-11, hub 12 adjacent to 7..=10
        let mut edges: Vec<(Vertex, Vertex)> = (0..11).map(|v| (v, v + 1)).collect();
        edges.extend([(12, 7), (12, 8), (12, 9), (12, 10)]);
        let g = Graph::from_edges(13, edges.clone()).unwrap();
        let c = cgk_clustering(&g, 4f64.ln() / 13f64.ln());
        assert_eq!(c.clusters, vec![vec![7, 8, 9, 10]]);
        let path: Vec<Vertex> = (0..12).collect();

        assert_eq!(compute_value(&path, &c, &g), 0);
        let cut: Vec<_> = edges.iter().copied().filter(|&e| e != (6, 7)).collect();
        let h = Graph::from_edges(13, cut).unwrap();
        assert_eq!(compute_value(&path, &c, &h), 1);
        assert_eq!(compute_value(&path[..7], &c, &h), 0);
        let mut short = edges;
        short.push((0, 12));
        let h = Graph::from_edges(13, short).unwrap();
        assert_eq!(compute_value(&path, &c, &h), 0);
    }

    #[test]
    fn light_graphs_are_kept_whole() {
        let g = cycle_graph(40);
        let s = SourceSet::new(40, [0, 13]).unwrap();
        let run = build_sourcewise_additive(&g, &s, 1, 1).unwrap();
        assert_eq!(run.spanner.edges, g.edge_set());
        assert!(run.buys.is_empty());
    }

    #[test]
    fn phases_sum_to_size_and_parts_are_subgraphs() {
        let g = random_graph(200, 0.08, 2).unwrap();
        let s = SourceSet::sample(200, 14, 2).unwrap();
        for k in 1..=2 {
            let run = build_sourcewise_additive(&g, &s, k, 3).unwrap();
            let total: usize = run.spanner.meta.phases.iter().map(|p| p.1).sum();
            assert_eq!(total, run.spanner.size());
            g.check_subgraph(&run.hb).unwrap();
            assert!(run.ha.is_subset(&run.spanner.edges));
            assert!(run.hb.is_subset(&run.spanner.edges));
        }
    }

    fn thick_path(layers: u32, width: u32) -> Graph {
        let mut edges = Vec::new();
        for l in 0..layers - 1 {
            for a in 0..width {
                for b in 0..width {
                    edges.push((l * width + a, (l + 1) * width + b));
                }
            }
        }
        Graph::from_edges((layers * width) as usize, edges).unwrap()
    }

    #[test]
    fn long_pairs_are_served_by_sampled_trees() {
        let g = thick_path(134, 3);
        let s = SourceSet::new(g.n(), [0, 200]).unwrap();
        let run = build_sourcewise_additive_with(&g, &s, 1, 5, 2).unwrap();
        assert!(run.pairs.iter().any(|p| p.is_long));
        assert_eq!(run.long_failures, 0);
        let h = run.spanner.to_graph();
        for &src in s.as_slice() {
            let dg = bfs_distances(&g, src);
            let dh = bfs_distances(&h, src);
            assert!(g.vertices().all(|v| dh[v as usize] <= dg[v as usize] + 2));
        }
    }

    #[test]
    fn k_zero_rejected() {
        let g = path_graph(4);
        let s = SourceSet::all(4).unwrap();
        assert!(build_sourcewise_additive(&g, &s, 0, 1).is_err());
    }
}
