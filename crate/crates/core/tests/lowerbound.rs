mod common;

use hybrid_spanners::lowerbound::{build_lb_graph, find_missing_chain, lb_audit, LayeredGraph};
use hybrid_spanners::{Edge, EdgeSet, Vertex};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DESK: [(u64, usize, f64); 5] = [
    (16, 2, 1.0),
    (8, 3, 1.0),
    (16, 2, 0.5),
    (6, 1, 1.0),
    (9, 2, 1.0),
];

/// Every level chain whose edges are all missing from `h`, by brute force.
fn all_missing_chains(lg: &LayeredGraph, h: &EdgeSet) -> Vec<Vec<Vertex>> {
    let mut chains: Vec<Vec<Vertex>> = lg.level_vertices(0).map(|v| vec![v]).collect();
    for level in 1..=lg.k() {
        let mut next = Vec::new();
        for chain in &chains {
            let last = *chain.last().unwrap();
            for w in lg.level_vertices(level) {
                if lg.graph.has_edge(last, w) && !h.contains(&Edge::new(last, w)) {
                    let mut c = chain.clone();
                    c.push(w);
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    chains
}

fn random_candidate(lg: &LayeredGraph, size: usize, seed: u64) -> EdgeSet {
    let all: Vec<Edge> = lg.graph.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.choose_multiple(&mut rng, size.min(all.len()))
        .copied()
        .collect()
}

#[test]
fn counts_match_closed_forms() {
    for (r, k, eps) in DESK {
        let lg = build_lb_graph(r, k, eps).unwrap();
        let (n1, n2, k32) = (lg.meta.n1, lg.meta.n2, k as u32);
        assert_eq!(
            lg.graph.n() as u64,
            n1.pow(k32) + k as u64 * n2 * n1.pow(k32 - 1)
        );
        assert_eq!(lg.graph.m() as u64, k as u64 * n1.pow(k32) * n2);
        assert_eq!(lg.meta.level_sizes.len(), k + 1);
    }
}

#[test]
fn short_paths_between_chain_ends_use_exactly_one_chain_edge_on_some_level() {
    for (r, k, eps) in DESK {
        let lg = build_lb_graph(r, k, eps).unwrap();
        if lg.graph.n() > 64 {
            continue;
        }
        for seed in 0..4 {
            let h = random_candidate(&lg, lg.graph.m() / (k + 1), seed);
            let Some(chain) = find_missing_chain(&lg, &h).unwrap() else {
                continue;
            };
            let chain_edges: Vec<Edge> = chain.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
            let paths = common::simple_paths_shorter_than(&lg.graph, chain[0], chain[k], 3 * k);
            for p in &paths {
                let level_of = |e: Edge| lg.levels[e.u() as usize].min(lg.levels[e.v() as usize]);
                let edges: Vec<Edge> = p.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
                let found = chain_edges.iter().enumerate().any(|(i, ce)| {
                    edges.contains(ce) && edges.iter().filter(|&&e| level_of(e) == i).count() == 1
                });
                assert!(found, "({r},{k},{eps}) path {p:?} avoids chain {chain:?}");
            }
            let audit = lb_audit(&lg, &h).unwrap();
            assert!(audit.witness_holds, "{audit:?}");
        }
    }
}

#[test]
fn diameter_is_at_most_three_k() {
    for (r, k, eps) in DESK {
        let lg = build_lb_graph(r, k, eps).unwrap();
        let d = common::graph_apsp(&lg.graph);
        let diameter = d.iter().flatten().copied().max().unwrap();
        assert!(diameter <= 3 * k as u64, "({r},{k},{eps}): {diameter}");
    }
}

#[test]
fn sixty_edge_candidate_has_a_chain() {
    let lg = build_lb_graph(16, 2, 1.0).unwrap();
    for seed in 0..10 {
        let h = random_candidate(&lg, 60, seed);
        let chain = find_missing_chain(&lg, &h)
            .unwrap()
            .expect("sparse candidate");
        let brute = all_missing_chains(&lg, &h);
        assert_eq!(Some(&chain), brute.iter().min());
        let audit = lb_audit(&lg, &h).unwrap();
        assert_eq!(audit.dist_g, Some(2));
        assert!(audit.dist_h.is_none_or(|d| d >= 6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_search_agrees_with_brute_force(which in 0usize..5, keep in 0.0f64..1.0, seed in any::<u64>()) {
        let (r, k, eps) = DESK[which];
        let lg = build_lb_graph(r, k, eps).unwrap();
        let h = random_candidate(&lg, (keep * lg.graph.m() as f64) as usize, seed);
        let chain = find_missing_chain(&lg, &h).unwrap();
        let brute = all_missing_chains(&lg, &h);
        prop_assert_eq!(chain.as_ref(), brute.iter().min());
        if h.len() * k < lg.graph.m() {
            prop_assert!(chain.is_some());
        }
        if let Some(c) = chain {
            prop_assert_eq!(c.len(), k + 1);
            for (i, &v) in c.iter().enumerate() {
                prop_assert_eq!(lg.levels[v as usize], i);
            }
        }
    }
}
