use super::{Edge, Graph, Vertex};

/// A simple path given by its vertex sequence; its length is the number of
/// edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path(Vec<Vertex>);

impl Path {
    /// Panics on an empty vertex list.
    pub fn new(vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        Path(vertices)
    }

    pub fn single(v: Vertex) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn source(&self) -> Vertex {
        self.0[0]
    }

    pub fn target(&self) -> Vertex {
        *self.0.last().unwrap()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Consecutive vertices adjacent in `g` and no vertex repeated.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.0
            .iter()
            .all(|&v| (v as usize) < g.n() && seen.insert(v))
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// Which endpoint a suffix is measured from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    Source,
    Target,
}

/// The `min(ell, len)` edges of `p` closest to the anchored endpoint.
pub fn path_suffix(p: &Path, ell: usize, anchor: Anchor) -> Vec<Edge> {
    let take = ell.min(p.len());
    let edges = p.edges();
    match anchor {
        Anchor::Source => edges.take(take).collect(),
        Anchor::Target => {
            let skip = p.len() - take;
            edges.skip(skip).collect()
        }
    }
}
