//! Simple undirected unweighted graphs on dense vertex ids.

mod bfs;
mod generate;
mod io;
mod path;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use bfs::{bfs, bfs_bounded, bfs_distances, canonical_path, weighted_sssp, BfsTree};
pub use generate::{
    complete_graph, cycle_graph, path_graph, petersen_graph, random_graph, star_graph,
};
pub use io::{format_edge_list, format_emulator, load_emulator, load_graph};
pub use path::{path_suffix, Anchor, Path};

pub type Vertex = u32;
pub type Dist = u32;

/// Distance sentinel for unreachable vertices.
pub const UNREACHABLE: Dist = Dist::MAX;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b, "self-loop");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

pub type EdgeSet = BTreeSet<Edge>;

/// Read access to sorted adjacency lists.
pub trait Adjacency {
    fn n(&self) -> usize;
    fn neighbors(&self, v: Vertex) -> &[Vertex];
}

/// Compressed adjacency: `targets[offsets[v]..offsets[v + 1]]` are the
/// neighbours of `v` in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and ids `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = EdgeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: u64::from(x),
                        n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            if !set.insert(Edge::new(u, v)) {
                return Err(Error::DuplicateEdge { u, v });
            }
        }
        Ok(Self::from_edge_set(n, &set))
    }

    /// Builds a graph from a normalized edge set whose ids are below `n`.
    pub fn from_edge_set(n: usize, edges: &EdgeSet) -> Self {
        let mut degree = vec![0usize; n];
        for e in edges {
            degree[e.0 as usize] += 1;
            degree[e.1 as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        // Edges come out of the BTreeSet sorted, so each list is filled in
        // ascending order for the smaller endpoint; sort to cover the rest.
        for e in edges {
            targets[fill[e.0 as usize]] = e.1;
            fill[e.0 as usize] += 1;
            targets[fill[e.1 as usize]] = e.0;
            fill[e.1 as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { offsets, targets }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// Every edge once, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| Edge(u, v))
        })
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// The subgraph on the same vertex set keeping only `edges`.
    pub fn subgraph(&self, edges: &EdgeSet) -> Result<Graph> {
        self.check_subgraph(edges)?;
        Ok(Graph::from_edge_set(self.n(), edges))
    }

    pub fn check_subgraph(&self, edges: &EdgeSet) -> Result<()> {
        match edges.iter().find(|e| !self.has_edge(e.0, e.1)) {
            Some(e) => Err(Error::NotSubgraph { u: e.0, v: e.1 }),
            None => Ok(()),
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u64::from(v),
                n: self.n(),
            })
        }
    }
}

impl Adjacency for Graph {
    fn n(&self) -> usize {
        Graph::n(self)
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        Graph::neighbors(self, v)
    }
}

/// Adjacency lists that accept new edges, for subgraphs grown edge by edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowingGraph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl GrowingGraph {
    pub fn new(n: usize) -> Self {
        GrowingGraph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edge_set(n: usize, edges: &EdgeSet) -> Self {
        let mut h = GrowingGraph::new(n);
        for &e in edges {
            h.insert(e);
        }
        h
    }

    /// Returns whether the edge was new.
    pub fn insert(&mut self, e: Edge) -> bool {
        let list = &mut self.adj[e.0 as usize];
        match list.binary_search(&e.1) {
            Ok(_) => false,
            Err(i) => {
                list.insert(i, e.1);
                let other = &mut self.adj[e.1 as usize];
                let j = other.binary_search(&e.0).unwrap_err();
                other.insert(j, e.0);
                self.m += 1;
                true
            }
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edge_set(&self) -> EdgeSet {
        let mut out = EdgeSet::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if (u as Vertex) < v {
                    out.insert(Edge(u as Vertex, v));
                }
            }
        }
        out
    }
}

impl Adjacency for GrowingGraph {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }
}

/// A weighted graph on `n` vertices; its edges need not be graph edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Emulator {
    n: usize,
    edges: BTreeMap<Edge, Dist>,
}

impl Emulator {
    pub fn new(n: usize) -> Self {
        Emulator {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Unit-weight copy of `g`.
    pub fn from_graph(g: &Graph) -> Self {
        let mut h = Emulator::new(g.n());
        for e in g.edges() {
            h.edges.insert(e, 1);
        }
        h
    }

    /// Adds `(u, v, w)`, keeping the lighter weight if the edge exists.
    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Dist) -> Result<()> {
        for x in [u, v] {
            if x as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: u64::from(x),
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        if w == 0 {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) has weight 0"
            )));
        }
        let slot = self.edges.entry(Edge::new(u, v)).or_insert(w);
        *slot = (*slot).min(w);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<Dist> {
        self.edges.get(&Edge::new(u, v)).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, Dist)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    /// Adjacency lists `(neighbour, weight)` for shortest-path search.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(Vertex, Dist)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, w) in self.edges() {
            adj[e.0 as usize].push((e.1, w));
            adj[e.1 as usize].push((e.0, w));
        }
        adj
    }
}
