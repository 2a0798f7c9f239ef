//! Layered graphs on which every sparse subgraph distorts some source pair
//! by at least `+2k`, and an audit that finds the witness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Dist, Edge, EdgeSet, Graph, Vertex, UNREACHABLE};
use crate::rng::ceil_pow;
use crate::spanner::SourceSet;

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

/// Parameters and level sizes of a generated instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LbMeta {
    pub r: u64,
    pub k: usize,
    pub epsilon: f64,
    pub n1: u64,
    pub n2: u64,
    /// Vertices per level, bottom level first.
    pub level_sizes: Vec<u64>,
    pub vertices: u64,
    pub edges: u64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct LayeredGraph {
    pub meta: LbMeta,
    pub graph: Graph,
    /// Level of each vertex, `0..=k`.
    pub levels: Vec<usize>,
    /// First vertex id of each level.
    offsets: Vec<u64>,
}

impl LayeredGraph {
    pub fn k(&self) -> usize {
        self.meta.k
    }

    /// Radix of coordinate `j` (0-based) on `level` (0-based).
    fn radix(&self, level: usize, j: usize) -> u64 {
        if j == 0 && level > 0 {
            self.meta.n2
        } else {
            self.meta.n1
        }
    }

    /// Vertex id of 0-based `coords` on `level`; the first coordinate is the
    /// most significant digit.
    pub fn vertex(&self, level: usize, coords: &[u64]) -> Vertex {
        let mut index = 0u64;
        for (j, &a) in coords.iter().enumerate() {
            let radix = self.radix(level, j);
            debug_assert!(a < radix);
            index = index * radix + a;
        }
        (self.offsets[level] + index) as Vertex
    }

    /// Level and 0-based coordinates of `v`.
    pub fn coords(&self, v: Vertex) -> (usize, Vec<u64>) {
        let level = self.levels[v as usize];
        let mut index = u64::from(v) - self.offsets[level];
        let mut coords = vec![0; self.meta.k];
        for j in (0..self.meta.k).rev() {
            let radix = self.radix(level, j);
            coords[j] = index % radix;
            index /= radix;
        }
        (level, coords)
    }

    /// Bottom-level vertices.
    pub fn sources(&self) -> SourceSet {
        let count = self.meta.level_sizes[0] as Vertex;
        SourceSet::new(self.graph.n(), 0..count).expect("bottom level is non-empty")
    }

    pub fn level_vertices(&self, level: usize) -> std::ops::Range<Vertex> {
        let start = self.offsets[level] as Vertex;
        start..start + self.meta.level_sizes[level] as Vertex
    }
}

pub fn lb_counts(r: u64, k: usize, epsilon: f64) -> Result<(u64, u64)> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r = {r}; need r >= 2")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {epsilon}; need 0 <= epsilon <= 1"
        )));
    }
    let n1 = ceil_pow(r as f64, epsilon / k as f64);
    let n2 = r.div_ceil(n1.saturating_pow(k as u32 - 1).max(1));
    Ok((n1, n2))
}

pub fn build_lb_graph(r: u64, k: usize, epsilon: f64) -> Result<LayeredGraph> {
    build_lb_graph_capped(r, k, epsilon, DEFAULT_VERTEX_CAP)
}

pub fn build_lb_graph_capped(r: u64, k: usize, epsilon: f64, cap: usize) -> Result<LayeredGraph> {
    let (n1, n2) = lb_counts(r, k, epsilon)?;
    let top = u128::from(n1).pow(k as u32 - 1);
    let bottom = top * u128::from(n1);
    let upper = top * u128::from(n2);
    let total = bottom + k as u128 * upper;
    if total > cap as u128 {
        return Err(Error::SizeCap {
            vertices: total,
            cap,
        });
    }
    let mut warnings = Vec::new();
    let lnr = (r as f64).ln();
    if r > 2 && lnr.ln() > 0.0 && k as f64 > lnr / lnr.ln() {
        warnings.push(format!(
            "k = {k} exceeds ln r / ln ln r = {:.2}",
            lnr / lnr.ln()
        ));
    }

    let mut level_sizes = vec![bottom as u64];
    level_sizes.extend(std::iter::repeat_n(upper as u64, k));
    let mut offsets = Vec::with_capacity(k + 1);
    let mut acc = 0u64;
    for &s in &level_sizes {
        offsets.push(acc);
        acc += s;
    }
    let n = acc as usize;
    let mut levels = vec![0usize; n];
    for (level, (&start, &size)) in offsets.iter().zip(&level_sizes).enumerate() {
        levels[start as usize..(start + size) as usize].fill(level);
    }

    let mut lg = LayeredGraph {
        meta: LbMeta {
            r,
            k,
            epsilon,
            n1,
            n2,
            level_sizes,
            vertices: n as u64,
            edges: 0,
            warnings,
        },
        graph: Graph::empty(n),
        levels,
        offsets,
    };

    // level i joins to level i+1 by replacing coordinate i
    let mut edges = EdgeSet::new();
    for level in 0..k {
        let choices = if level == 0 { n2 } else { n1 };
        for v in lg.level_vertices(level) {
            let (_, coords) = lg.coords(v);
            let mut next = coords.clone();
            for c in 0..choices {
                next[level] = c;
                edges.insert(Edge::new(v, lg.vertex(level + 1, &next)));
            }
        }
    }
    lg.meta.edges = edges.len() as u64;
    lg.graph = Graph::from_edge_set(n, &edges);
    Ok(lg)
}

fn check_candidate(lg: &LayeredGraph, h: &EdgeSet) -> Result<()> {
    lg.graph.check_subgraph(h)
}

/// The lexicographically smallest chain `v_0, ..., v_k`, one vertex per
/// level, whose `k` edges are all absent from `h`.
pub fn find_missing_chain(lg: &LayeredGraph, h: &EdgeSet) -> Result<Option<Vec<Vertex>>> {
    check_candidate(lg, h)?;
    let k = lg.k();
    let g = &lg.graph;
    let missing = |a: Vertex, b: Vertex| !h.contains(&Edge::new(a, b));

    // good[v]: some missing-edge chain runs from v to the top level
    let mut good = vec![false; g.n()];
    for v in lg.level_vertices(k) {
        good[v as usize] = true;
    }
    for level in (0..k).rev() {
        for v in lg.level_vertices(level) {
            good[v as usize] = g
                .neighbors(v)
                .iter()
                .any(|&w| lg.levels[w as usize] == level + 1 && good[w as usize] && missing(v, w));
        }
    }

    let Some(start) = lg.level_vertices(0).find(|&v| good[v as usize]) else {
        return Ok(None);
    };
    let mut chain = vec![start];
    for level in 0..k {
        let v = *chain.last().unwrap();
        let next = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| lg.levels[w as usize] == level + 1 && good[w as usize] && missing(v, w))
            .expect("good vertex extends");
        chain.push(next);
    }
    Ok(Some(chain))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LbAudit {
    pub chain: Option<Vec<Vertex>>,
    pub witness: Option<(Vertex, Vertex)>,
    pub dist_g: Option<Dist>,
    /// `None` when the witness pair is disconnected in the candidate.
    pub dist_h: Option<Dist>,
    pub candidate_edges: usize,
    pub sparse_threshold: u64,
    /// The witness meets `dist_g <= k` and `dist_h >= 3k`.
    pub witness_holds: bool,
}

impl LbAudit {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("audit serializes")
    }
}

pub fn lb_audit(lg: &LayeredGraph, h: &EdgeSet) -> Result<LbAudit> {
    let chain = find_missing_chain(lg, h)?;
    let threshold = lg.meta.edges / lg.k() as u64;
    let mut audit = LbAudit {
        chain: chain.clone(),
        witness: None,
        dist_g: None,
        dist_h: None,
        candidate_edges: h.len(),
        sparse_threshold: threshold,
        witness_holds: false,
    };
    let Some(chain) = chain else {
        return Ok(audit);
    };
    let (a, b) = (chain[0], *chain.last().unwrap());
    let k = lg.k() as Dist;
    let dg = bfs_distances(&lg.graph, a)[b as usize];
    let dh = bfs_distances(&Graph::from_edge_set(lg.graph.n(), h), a)[b as usize];
    audit.witness = Some((a, b));
    audit.dist_g = Some(dg);
    audit.dist_h = (dh != UNREACHABLE).then_some(dh);
    audit.witness_holds = dg <= k && (dh == UNREACHABLE || dh >= 3 * k);
    Ok(audit)
}
