use rand::Rng;

use super::{Edge, EdgeSet, Graph, Vertex};
use crate::error::{Error, Result};
use crate::rng;

/// Erdős–Rényi `G(n, p)`: every unordered pair independently with
/// probability `p`, deterministic in `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    let mut rng = rng::stream(seed, "gen/random");
    let mut edges = EdgeSet::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.gen::<f64>() < p {
                edges.insert(Edge::new(u, v));
            }
        }
    }
    Ok(Graph::from_edge_set(n, &edges))
}

pub fn path_graph(n: usize) -> Graph {
    let edges: EdgeSet = (1..n as Vertex).map(|v| Edge::new(v - 1, v)).collect();
    Graph::from_edge_set(n, &edges)
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: EdgeSet = (0..n as Vertex)
        .map(|v| Edge::new(v, (v + 1) % n as Vertex))
        .collect();
    Graph::from_edge_set(n, &edges)
}

/// `K_{1, n-1}` with centre 0.
pub fn star_graph(n: usize) -> Graph {
    let edges: EdgeSet = (1..n as Vertex).map(|v| Edge::new(0, v)).collect();
    Graph::from_edge_set(n, &edges)
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = EdgeSet::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            edges.insert(Edge::new(u, v));
        }
    }
    Graph::from_edge_set(n, &edges)
}

/// Outer 5-cycle 0..5, spokes `i-(i+5)`, inner pentagram.
pub fn petersen_graph() -> Graph {
    let mut edges = EdgeSet::new();
    for i in 0..5 {
        edges.insert(Edge::new(i, (i + 1) % 5));
        edges.insert(Edge::new(i, i + 5));
        edges.insert(Edge::new(5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edge_set(10, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes_of_p() {
        assert_eq!(random_graph(30, 0.0, 1).unwrap().m(), 0);
        assert_eq!(random_graph(30, 1.0, 1).unwrap().m(), 30 * 29 / 2);
        assert!(random_graph(3, 1.5, 1).is_err());
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_graph(100, 0.05, 1).unwrap();
        let b = random_graph(100, 0.05, 1).unwrap();
        let c = random_graph(100, 0.05, 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn petersen_is_cubic() {
        let g = petersen_graph();
        assert_eq!(g.m(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }
}
