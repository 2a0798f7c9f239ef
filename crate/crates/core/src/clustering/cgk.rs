use crate::graph::{Edge, EdgeSet, Graph, Vertex};
use crate::rng::ceil_pow;

/// Disjoint clusters of equal size, each around a hub adjacent to all of its
/// members, and the subgraph that keeps every edge not running between two
/// different clusters.
#[derive(Clone, Debug)]
pub struct CgkClustering {
    pub gamma: f64,
    /// Cluster size `⌈n^gamma⌉`.
    pub size: usize,
    /// Members of each cluster, ascending.
    pub clusters: Vec<Vec<Vertex>>,
    pub hubs: Vec<Vertex>,
    pub cluster_of: Vec<Option<usize>>,
    pub edges: EdgeSet,
}

impl CgkClustering {
    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    /// A walk of at most two `edges` between two members of one cluster:
    /// the direct edge if present, otherwise through the hub.
    pub fn route(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        if a == b {
            return vec![a];
        }
        let c = self.cluster_of[a as usize].expect("clustered vertex");
        debug_assert_eq!(self.cluster_of[b as usize], Some(c));
        if self.edges.contains(&Edge::new(a, b)) {
            vec![a, b]
        } else {
            vec![a, self.hubs[c], b]
        }
    }
}

/// Greedy clustering: scanning vertices by id, while `v` has at least
/// `⌈n^gamma⌉` unclustered neighbours, the smallest such neighbours form a
/// new cluster with hub `v`.
pub fn cgk_clustering(g: &Graph, gamma: f64) -> CgkClustering {
    let n = g.n();
    let size = (ceil_pow(n as f64, gamma) as usize).max(1);
    let mut cluster_of: Vec<Option<usize>> = vec![None; n];
    let mut clusters: Vec<Vec<Vertex>> = Vec::new();
    let mut hubs = Vec::new();
    let mut edges = EdgeSet::new();

    for v in g.vertices() {
        loop {
            let free: Vec<Vertex> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| cluster_of[w as usize].is_none())
                .take(size)
                .collect();
            if free.len() < size {
                break;
            }
            let id = clusters.len();
            for &w in &free {
                cluster_of[w as usize] = Some(id);
                edges.insert(Edge::new(v, w));
            }
            clusters.push(free);
            hubs.push(v);
        }
    }

    for e in g.edges() {
        let (a, b) = (cluster_of[e.u() as usize], cluster_of[e.v() as usize]);
        match (a, b) {
            (Some(x), Some(y)) if x != y => {}
            _ => {
                edges.insert(e);
            }
        }
    }

    CgkClustering {
        gamma,
        size,
        clusters,
        hubs,
        cluster_of,
        edges,
    }
}
