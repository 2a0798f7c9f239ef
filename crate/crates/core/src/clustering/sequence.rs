use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{bfs_bounded, bfs_distances, Dist, Edge, EdgeSet, Graph, Vertex, UNREACHABLE};
use crate::rng;

/// One clustering `C_τ` with the edges it contributed.
#[derive(Clone, Debug)]
pub struct Level {
    /// Sampled centers, ascending.
    pub centers: Vec<Vertex>,
    /// Assigned center per vertex, `None` if farther than `τ` from every center.
    pub center_of: Vec<Option<Vertex>>,
    pub dist: Vec<Dist>,
    /// Forest parent towards the center.
    pub parent: Vec<Option<Vertex>>,
    pub forest: EdgeSet,
    /// Vertices clustered at every earlier level but not at this one.
    pub delta: Vec<Vertex>,
    /// One edge from each `delta` vertex to each adjacent cluster of the
    /// previous level.
    pub q: EdgeSet,
}

impl Level {
    pub fn is_clustered(&self, v: Vertex) -> bool {
        self.center_of[v as usize].is_some()
    }

    /// Members grouped by center, both ascending.
    pub fn clusters(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut out: BTreeMap<Vertex, Vec<Vertex>> =
            self.centers.iter().map(|&c| (c, Vec::new())).collect();
        for (v, c) in self.center_of.iter().enumerate() {
            if let Some(c) = c {
                out.get_mut(c).unwrap().push(v as Vertex);
            }
        }
        out
    }
}

/// The clusterings `C_0..C_k` and the partial spanner they induce.
#[derive(Clone, Debug)]
pub struct ClusterSequence {
    pub k: usize,
    pub mu: f64,
    pub seed: u64,
    pub levels: Vec<Level>,
    /// Union of all forests and `q` sets.
    pub spanner: EdgeSet,
}

impl ClusterSequence {
    pub fn level(&self, tau: usize) -> &Level {
        &self.levels[tau]
    }

    pub fn centers(&self, tau: usize) -> &[Vertex] {
        &self.levels[tau].centers
    }

    /// One line `τ u center dist` per vertex per level; `-` marks unassigned.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (tau, level) in self.levels.iter().enumerate() {
            for (u, c) in level.center_of.iter().enumerate() {
                match c {
                    Some(c) => writeln!(out, "{tau} {u} {c} {}", level.dist[u]).unwrap(),
                    None => writeln!(out, "{tau} {u} - -").unwrap(),
                }
            }
        }
        out
    }
}

/// The center nearest to `u`, ties to the smallest id, if it lies within
/// `radius`. Computed by a BFS from `u` alone.
pub fn nearest_center(g: &Graph, u: Vertex, centers: &[Vertex], radius: Dist) -> Option<Vertex> {
    let dist = bfs_distances(g, u);
    centers
        .iter()
        .filter(|&&c| dist[c as usize] <= radius)
        .min_by_key(|&&c| (dist[c as usize], c))
        .copied()
}

/// Builds `k + 1` clusterings with center sets thinned by a factor
/// `n^{-mu}` per level.
///
/// The last center set is empty whenever `k * mu >= 1`; otherwise it is
/// sampled like the others.
pub fn cluster_sequence(g: &Graph, k: usize, mu: f64, seed: u64) -> Result<ClusterSequence> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidParameter(format!("mu = {mu} not in [0, 1]")));
    }
    let n = g.n();
    let keep = (n as f64).powf(-mu);

    let mut levels = Vec::with_capacity(k + 1);
    levels.push(Level {
        centers: g.vertices().collect(),
        center_of: g.vertices().map(Some).collect(),
        dist: vec![0; n],
        parent: vec![None; n],
        forest: EdgeSet::new(),
        delta: Vec::new(),
        q: EdgeSet::new(),
    });
    let mut alive = vec![true; n];
    let mut spanner = EdgeSet::new();

    for tau in 1..=k {
        let prev = &levels[tau - 1];
        let centers: Vec<Vertex> = if tau == k && k as f64 * mu >= 1.0 - 1e-12 {
            Vec::new()
        } else {
            let mut rng = rng::stream(seed, &format!("cluster/{tau}"));
            prev.centers
                .iter()
                .copied()
                .filter(|_| rng.gen::<f64>() < keep)
                .collect()
        };

        let tree = bfs_bounded(g, &centers, Some(tau as Dist));
        let forest: EdgeSet = tree.tree_edges().collect();

        let mut delta = Vec::new();
        let mut q = EdgeSet::new();
        for v in g.vertices() {
            let clustered = tree.dist[v as usize] != UNREACHABLE;
            if alive[v as usize] && !clustered {
                delta.push(v);
                let mut seen = Vec::new();
                for &w in g.neighbors(v) {
                    if let Some(c) = prev.center_of[w as usize] {
                        if !seen.contains(&c) {
                            seen.push(c);
                            q.insert(Edge::new(v, w));
                        }
                    }
                }
            }
            alive[v as usize] &= clustered;
        }

        spanner.extend(forest.iter().copied());
        spanner.extend(q.iter().copied());
        levels.push(Level {
            centers,
            center_of: tree.owner,
            dist: tree.dist,
            parent: tree.parent,
            forest,
            delta,
            q,
        });
    }

    Ok(ClusterSequence {
        k,
        mu,
        seed,
        levels,
        spanner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph, petersen_graph, random_graph};

    #[test]
    fn nearest_center_examples() {
        assert_eq!(nearest_center(&path_graph(3), 1, &[0, 2], 1), Some(0));
        assert_eq!(nearest_center(&path_graph(3), 2, &[0, 2], 0), Some(2));
        assert_eq!(nearest_center(&cycle_graph(5), 3, &[0], 1), None);
    }

    #[test]
    fn level_zero_is_singletons() {
        let g = petersen_graph();
        let cs = cluster_sequence(&g, 2, 0.5, 3).unwrap();
        let l0 = cs.level(0);
        assert!(l0.clusters().iter().all(|(c, m)| m == &vec![*c]));
    }

    #[test]
    fn k1_mu1_keeps_whole_graph() {
        let g = random_graph(40, 0.2, 9).unwrap();
        let cs = cluster_sequence(&g, 1, 1.0, 1).unwrap();
        assert!(cs.centers(1).is_empty());
        assert_eq!(cs.level(1).delta.len(), 40);
        assert_eq!(cs.spanner, g.edge_set());
    }

    #[test]
    fn assignments_match_independent_bfs() {
        let g = petersen_graph();
        let cs = cluster_sequence(&g, 2, 0.5, 3).unwrap();
        for tau in 0..=2 {
            let level = cs.level(tau);
            for u in g.vertices() {
                let want = if level.centers.is_empty() {
                    None
                } else {
                    nearest_center(&g, u, &level.centers, tau as Dist)
                };
                assert_eq!(level.center_of[u as usize], want, "tau {tau} u {u}");
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = path_graph(3);
        assert!(cluster_sequence(&g, 0, 0.5, 1).is_err());
        assert!(cluster_sequence(&g, 2, 1.5, 1).is_err());
    }

    #[test]
    fn dump_lists_every_vertex_per_level() {
        let g = path_graph(4);
        let cs = cluster_sequence(&g, 1, 1.0, 1).unwrap();
        let dump = cs.dump();
        assert_eq!(dump.lines().count(), 8);
        assert!(dump.starts_with("0 0 0 0\n"));
        assert!(dump.ends_with("1 3 - -\n"));
    }
}
