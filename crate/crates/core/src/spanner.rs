use std::collections::BTreeMap;

use rand::seq::index;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{format_edge_list, EdgeSet, Graph, Vertex};
use crate::rng;

/// Construction metadata carried alongside a spanner.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SpannerMeta {
    pub construction: String,
    pub params: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    /// Edges newly contributed by each phase, in construction order. The
    /// counts sum to the spanner size.
    pub phases: Vec<(String, usize)>,
    pub warnings: Vec<String>,
}

impl SpannerMeta {
    pub fn new(construction: &str, seed: Option<u64>) -> Self {
        SpannerMeta {
            construction: construction.to_string(),
            seed,
            ..Default::default()
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }
}

/// An edge subset of a host graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Spanner {
    pub n: usize,
    pub edges: EdgeSet,
    pub meta: SpannerMeta,
}

impl Spanner {
    pub fn new(n: usize, meta: SpannerMeta) -> Self {
        Spanner {
            n,
            edges: EdgeSet::new(),
            meta,
        }
    }

    /// Wraps a bare edge set, e.g. a candidate read from disk.
    pub fn from_edges(n: usize, edges: EdgeSet) -> Self {
        Spanner {
            n,
            edges,
            meta: SpannerMeta::new("candidate", None),
        }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Adds `edges` and records how many of them were new under `phase`.
    pub fn absorb<I: IntoIterator<Item = crate::graph::Edge>>(
        &mut self,
        phase: &str,
        edges: I,
    ) -> usize {
        let before = self.edges.len();
        self.edges.extend(edges);
        let added = self.edges.len() - before;
        self.meta.phases.push((phase.to_string(), added));
        added
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edge_set(self.n, &self.edges)
    }

    pub fn to_edge_list(&self) -> String {
        format_edge_list(self.n, &self.edges)
    }
}

/// Designated source vertices, sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSet {
    n: usize,
    sources: Vec<Vertex>,
}

impl SourceSet {
    pub fn new(n: usize, sources: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut sources: Vec<Vertex> = sources.into_iter().collect();
        sources.sort_unstable();
        sources.dedup();
        if sources.is_empty() {
            return Err(Error::InvalidParameter("source set is empty".into()));
        }
        if let Some(&v) = sources.iter().find(|&&v| v as usize >= n) {
            return Err(Error::VertexOutOfRange {
                vertex: u64::from(v),
                n,
            });
        }
        Ok(SourceSet { n, sources })
    }

    pub fn all(n: usize) -> Result<Self> {
        Self::new(n, 0..n as Vertex)
    }

    /// `count` distinct vertices drawn uniformly under `seed`.
    pub fn sample(n: usize, count: usize, seed: u64) -> Result<Self> {
        if count == 0 || count > n {
            return Err(Error::InvalidParameter(format!(
                "cannot draw {count} sources from {n} vertices"
            )));
        }
        let mut rng = rng::stream(seed, "sources");
        Self::new(
            n,
            index::sample(&mut rng, n, count)
                .into_iter()
                .map(|i| i as Vertex),
        )
    }

    /// Parses one vertex id per line; blank lines and `#` comments ignored.
    pub fn parse(n: usize, document: &str) -> Result<Self> {
        let mut ids = Vec::new();
        for (i, raw) in document.lines().enumerate() {
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let id: u64 = text.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("invalid source id `{text}`"),
            })?;
            if id >= n as u64 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("source {id} out of range (n = {n})"),
                });
            }
            ids.push(id as Vertex);
        }
        Self::new(n, ids)
    }

    pub fn format(&self) -> String {
        self.sources.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.sources.binary_search(&v).is_ok()
    }

    /// `log|S| / log n`, clamped to `[0, 1]`.
    pub fn epsilon(&self) -> f64 {
        if self.n < 2 {
            return 1.0;
        }
        ((self.len() as f64).ln() / (self.n as f64).ln()).clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn epsilon_of_full_set_is_one() {
        assert_eq!(SourceSet::all(50).unwrap().epsilon(), 1.0);
        assert!((SourceSet::sample(1024, 32, 1).unwrap().epsilon() - 0.5).abs() < 1e-12);
        assert_eq!(SourceSet::new(10, [4]).unwrap().epsilon(), 0.0);
    }

    #[test]
    fn parse_and_format() {
        let s = SourceSet::parse(10, "# sources\n3\n1\n\n3\n").unwrap();
        assert_eq!(s.as_slice(), &[1, 3]);
        assert_eq!(SourceSet::parse(10, &s.format()).unwrap(), s);
        assert!(matches!(
            SourceSet::parse(10, "1\n12\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(SourceSet::parse(10, "").is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let a = SourceSet::sample(100, 10, 4).unwrap();
        assert_eq!(a, SourceSet::sample(100, 10, 4).unwrap());
        assert_eq!(a.len(), 10);
    }

    #[test]
    fn absorb_counts_new_edges() {
        let mut h = Spanner::new(4, SpannerMeta::new("t", None));
        assert_eq!(h.absorb("a", [Edge::new(0, 1), Edge::new(1, 2)]), 2);
        assert_eq!(h.absorb("b", [Edge::new(0, 1), Edge::new(2, 3)]), 1);
        let total: usize = h.meta.phases.iter().map(|p| p.1).sum();
        assert_eq!(total, h.size());
    }
}
