use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{Adjacency, Dist, Edge, Emulator, Graph, Path, Vertex, UNREACHABLE};
use crate::error::{Error, Result};

/// Result of a (multi-root) breadth-first search with canonical tie-breaks.
///
/// Each reached vertex records its owning root (the nearest root, ties to the
/// smaller id) and a parent: the smallest-id neighbour one layer closer that
/// has the same owner. For a single root this is just the smallest-id
/// neighbour one layer closer.
#[derive(Clone, Debug)]
pub struct BfsTree {
    pub dist: Vec<Dist>,
    pub owner: Vec<Option<Vertex>>,
    pub parent: Vec<Option<Vertex>>,
}

impl BfsTree {
    pub fn reached(&self, v: Vertex) -> bool {
        self.dist[v as usize] != UNREACHABLE
    }

    /// Path from the owning root of `v` to `v` along parents.
    pub fn path_to(&self, v: Vertex) -> Option<Path> {
        if !self.reached(v) {
            return None;
        }
        let mut vertices = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur as usize] {
            vertices.push(p);
            cur = p;
        }
        vertices.reverse();
        Some(Path::new(vertices))
    }

    /// Tree edges on the way from `v` towards its root, nearest to `v` first.
    pub fn edges_up(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        let mut cur = v;
        std::iter::from_fn(move || {
            let p = self.parent[cur as usize]?;
            let e = Edge::new(cur, p);
            cur = p;
            Some(e)
        })
    }

    /// All parent edges.
    pub fn tree_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| Edge::new(v as Vertex, p)))
    }
}

/// Breadth-first search from a non-empty root set.
pub fn bfs(g: &Graph, roots: &[Vertex]) -> Result<BfsTree> {
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    for &r in roots {
        g.check_vertex(r)?;
    }
    Ok(bfs_bounded(g, roots, None))
}

/// BFS truncated after `max_depth` layers (`None` for unbounded). An empty
/// root set yields an all-unreachable tree.
pub fn bfs_bounded<A: Adjacency + ?Sized>(
    g: &A,
    roots: &[Vertex],
    max_depth: Option<Dist>,
) -> BfsTree {
    let n = g.n();
    let mut dist = vec![UNREACHABLE; n];
    let mut owner = vec![None; n];
    let parent = vec![None; n];
    let mut tree = BfsTree {
        dist: Vec::new(),
        owner: Vec::new(),
        parent,
    };

    let mut frontier: Vec<Vertex> = roots.to_vec();
    frontier.sort_unstable();
    frontier.dedup();
    for &r in &frontier {
        dist[r as usize] = 0;
        owner[r as usize] = Some(r);
    }

    let mut depth: Dist = 0;
    while !frontier.is_empty() && max_depth.is_none_or(|d| depth < d) {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = depth + 1;
                    next.push(w);
                }
            }
        }
        // adoption by (owner, parent id) over the previous layer
        for &w in &next {
            let mut best: Option<(Vertex, Vertex)> = None;
            for &x in g.neighbors(w) {
                if dist[x as usize] == depth {
                    let key = (owner[x as usize].unwrap(), x);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let (o, p) = best.unwrap();
            owner[w as usize] = Some(o);
            tree.parent[w as usize] = Some(p);
        }
        frontier = next;
        depth += 1;
    }

    tree.dist = dist;
    tree.owner = owner;
    tree
}

/// Plain single-source hop distances.
pub fn bfs_distances<A: Adjacency + ?Sized>(g: &A, root: Vertex) -> Vec<Dist> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[root as usize] = 0;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize] + 1;
        for &w in g.neighbors(u) {
            if dist[w as usize] == UNREACHABLE {
                dist[w as usize] = d;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The canonical shortest `u`–`v` path: BFS rooted at `u`, parents followed
/// back from `v`. `None` if `v` is unreachable.
pub fn canonical_path(g: &Graph, u: Vertex, v: Vertex) -> Result<Option<Path>> {
    g.check_vertex(v)?;
    let tree = bfs(g, &[u])?;
    Ok(tree.path_to(v))
}

/// Exact single-source distances in a positively weighted emulator
/// (Dijkstra). Unreachable vertices get `u64::MAX`.
pub fn weighted_sssp(h: &Emulator, root: Vertex) -> Vec<u64> {
    let adj = h.adjacency();
    let mut dist = vec![u64::MAX; h.n()];
    let mut heap = BinaryHeap::new();
    dist[root as usize] = 0;
    heap.push(Reverse((0u64, root)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u as usize] {
            continue;
        }
        for &(w, weight) in &adj[u as usize] {
            let nd = d + u64::from(weight);
            if nd < dist[w as usize] {
                dist[w as usize] = nd;
                heap.push(Reverse((nd, w)));
            }
        }
    }
    dist
}
