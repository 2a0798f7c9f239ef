//! Independent reference computations for the integration tests.
#![allow(dead_code)]

use hybrid_spanners::{Emulator, Graph, Vertex};

pub const INF: u64 = u64::MAX / 4;

/// All-pairs distances by Floyd–Warshall over weighted undirected edges.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, u64)]) -> Vec<Vec<u64>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b, w) in edges {
        d[a][b] = d[a][b].min(w);
        d[b][a] = d[b][a].min(w);
    }
    for m in 0..n {
        for i in 0..n {
            if d[i][m] == INF {
                continue;
            }
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn graph_apsp(g: &Graph) -> Vec<Vec<u64>> {
    let edges: Vec<_> = g
        .edges()
        .map(|e| (e.u() as usize, e.v() as usize, 1))
        .collect();
    floyd_warshall(g.n(), &edges)
}

pub fn emulator_apsp(h: &Emulator) -> Vec<Vec<u64>> {
    let edges: Vec<_> = h
        .edges()
        .map(|(e, w)| (e.u() as usize, e.v() as usize, u64::from(w)))
        .collect();
    floyd_warshall(h.n(), &edges)
}

/// Single-source distances by Bellman–Ford relaxation.
pub fn bellman_ford(n: usize, edges: &[(usize, usize, u64)], source: usize) -> Vec<u64> {
    let mut d = vec![INF; n];
    d[source] = 0;
    for _ in 0..n {
        let mut changed = false;
        for &(a, b, w) in edges {
            if d[a] != INF && d[a] + w < d[b] {
                d[b] = d[a] + w;
                changed = true;
            }
            if d[b] != INF && d[b] + w < d[a] {
                d[a] = d[b] + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d
}

/// Every simple path from `a` to `b` with fewer than `limit` edges.
pub fn simple_paths_shorter_than(
    g: &Graph,
    a: Vertex,
    b: Vertex,
    limit: usize,
) -> Vec<Vec<Vertex>> {
    fn walk(
        g: &Graph,
        b: Vertex,
        limit: usize,
        path: &mut Vec<Vertex>,
        on: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let v = *path.last().unwrap();
        if v == b {
            out.push(path.clone());
            return;
        }
        if path.len() >= limit {
            return;
        }
        for &w in g.neighbors(v) {
            if !on[w as usize] {
                on[w as usize] = true;
                path.push(w);
                walk(g, b, limit, path, on, out);
                path.pop();
                on[w as usize] = false;
            }
        }
    }
    let mut on = vec![false; g.n()];
    on[a as usize] = true;
    let mut out = Vec::new();
    walk(g, b, limit, &mut vec![a], &mut on, &mut out);
    out
}

/// Worst `dist_H - alpha * dist_G` over the listed pairs, by the cubic
/// oracle; `None` if some pair connected in `g` is disconnected in `h`.
pub fn worst_excess(g: &Graph, h: &Graph, pairs: &[(Vertex, Vertex)], alpha: u64) -> Option<i64> {
    let dg = graph_apsp(g);
    let dh = graph_apsp(h);
    let mut worst = i64::MIN;
    for &(a, b) in pairs {
        let (x, y) = (dg[a as usize][b as usize], dh[a as usize][b as usize]);
        if x == INF {
            continue;
        }
        if y == INF {
            return None;
        }
        worst = worst.max(y as i64 - (alpha * x) as i64);
    }
    Some(worst)
}
