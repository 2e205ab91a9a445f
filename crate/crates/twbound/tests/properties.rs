//! Property-based invariants: format round-trips, generator shape laws,
//! search-vs-brute-force agreement, budget bookkeeping, and monotonicity.

mod common;

use common::*;
use proptest::prelude::*;
use std::collections::BTreeMap;
use twbound::decomposition::{exact_treewidth, TreewidthOutcome};
use twbound::detection::{
    find_biclique_subgraph, find_clique, find_induced, verify_subdivision_model, SearchOutcome,
};
use twbound::dichotomy::{decide_bounded, ForbiddenSet};
use twbound::graph::formats::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use twbound::graph::generators::{generate, GeneratorSpec};
use twbound::graph::{line_graph, random_graph, subdivide, Graph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(60)) {
        let encoded = write_graph6(&g);
        prop_assert_eq!(parse_graph6(&encoded).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(40)) {
        let text = write_edge_list(&g);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn line_graph_counts(g in arb_graph(12)) {
        let l = line_graph(&g);
        prop_assert_eq!(l.n(), g.edge_count());
        let expected: usize = g
            .vertices()
            .map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2)
            .sum();
        prop_assert_eq!(l.edge_count(), expected);
    }

    #[test]
    fn tripod_generator_shape(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let g = generate(&GeneratorSpec::Tripod(i, j, k)).unwrap();
        prop_assert_eq!(g.n(), 1 + i + j + k);
        prop_assert_eq!(g.edge_count(), i + j + k); // connected and acyclic
        prop_assert!(g.vertices().all(|v| g.degree(v) <= 3));
        let leaves = g.vertices().filter(|&v| g.degree(v) == 1).count();
        prop_assert!(leaves <= 3);
        prop_assert!(oracle_is_tripod(&g));
    }

    #[test]
    fn line_tripod_generator_shape(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let g = generate(&GeneratorSpec::LineTripod(i, j, k)).unwrap();
        prop_assert_eq!(g.n(), 3 + i + j + k);
        prop_assert_eq!(g.edge_count(), g.n()); // connected and unicyclic
        prop_assert!(g.is_connected());
        prop_assert!(find_clique(&g, 3).is_some()); // the unique cycle is a triangle
    }

    #[test]
    fn proper_subdivision_separates_branches(g in arb_graph(7), extra in 0usize..2) {
        let counts: BTreeMap<(usize, usize), usize> =
            g.edges().into_iter().map(|e| (e, 1 + extra)).collect();
        let (host, model) = subdivide(&g, &counts).unwrap();
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v > u) {
                prop_assert!(!host.adjacent(u, v));
            }
        }
        prop_assert!(model.is_proper());
        verify_subdivision_model(&host, &model, true, true, 1 + extra).unwrap();
    }

    #[test]
    fn subdivision_models_verify(g in arb_graph(5), uniform in 0usize..3) {
        let counts: BTreeMap<(usize, usize), usize> =
            g.edges().into_iter().map(|e| (e, uniform)).collect();
        let (host, model) = subdivide(&g, &counts).unwrap();
        verify_subdivision_model(&host, &model, true, uniform >= 1, uniform).unwrap();
    }

    #[test]
    fn random_graph_is_deterministic(n in 0usize..20, seed: u64, p in 0.0f64..=1.0) {
        let a = random_graph(n, p, seed).unwrap();
        let b = random_graph(n, p, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn induced_search_matches_brute_force(pattern in arb_graph(4), host in arb_graph(7)) {
        let expected = oracle_has_induced(&pattern, &host);
        let got = matches!(find_induced(&pattern, &host, 1 << 22), SearchOutcome::Found(_));
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn clique_search_matches_brute_force(g in arb_graph(10), k in 1usize..5) {
        let n = g.n();
        let mut brute = false;
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.adjacent(u, v))) {
                brute = true;
                break;
            }
        }
        match find_clique(&g, k) {
            Some(embedding) => {
                prop_assert!(brute);
                embedding.check(&generate(&GeneratorSpec::Complete(k)).unwrap(), &g).unwrap();
            }
            None => prop_assert!(!brute),
        }
    }

    #[test]
    fn biclique_search_matches_brute_force(g in arb_graph(12), t in 1usize..4) {
        let n = g.n();
        let mut brute = false;
        'outer: for a_mask in 0u32..(1u32 << n) {
            if a_mask.count_ones() as usize != t {
                continue;
            }
            let a: Vec<usize> = (0..n).filter(|&v| a_mask >> v & 1 == 1).collect();
            for b_mask in 0u32..(1u32 << n) {
                if b_mask.count_ones() as usize != t || a_mask & b_mask != 0 {
                    continue;
                }
                let b: Vec<usize> = (0..n).filter(|&v| b_mask >> v & 1 == 1).collect();
                if a.iter().all(|&x| b.iter().all(|&y| g.adjacent(x, y))) {
                    brute = true;
                    break 'outer;
                }
            }
        }
        prop_assert_eq!(find_biclique_subgraph(&g, t, false).is_some(), brute);
    }

    /// A search may only answer NotFound after exhausting the space: if a
    /// truncated budget says NotFound, an unbounded search must agree.
    #[test]
    fn not_found_is_never_premature(pattern in arb_graph(4), host in arb_graph(7), budget in 1u64..200) {
        let truncated = find_induced(&pattern, &host, budget);
        if matches!(truncated, SearchOutcome::NotFound) {
            let full = find_induced(&pattern, &host, u64::MAX);
            prop_assert!(matches!(full, SearchOutcome::NotFound));
        }
    }

    #[test]
    fn treewidth_monotone_under_induced_subgraphs(g in arb_graph(7), keep in proptest::collection::vec(any::<bool>(), 7)) {
        let subset: Vec<usize> = g.vertices().filter(|&v| keep[v]).collect();
        let (sub, _) = g.induced(&subset);
        let tw_g = match exact_treewidth(&g, 1 << 22).unwrap() {
            TreewidthOutcome::Exact { width, .. } => width,
            _ => unreachable!("tiny graphs solve exactly"),
        };
        let tw_sub = match exact_treewidth(&sub, 1 << 22).unwrap() {
            TreewidthOutcome::Exact { width, .. } => width,
            _ => unreachable!("tiny graphs solve exactly"),
        };
        prop_assert!(tw_sub <= tw_g);
    }

    #[test]
    fn k_blocks_are_monotone(g in arb_graph(8), k in 1usize..7) {
        if twbound::blocks::exists_k_block(&g, k + 1).is_some() {
            prop_assert!(twbound::blocks::exists_k_block(&g, k).is_some());
        }
    }

    /// Permuting the forbidden set changes witnesses only, never the verdict.
    #[test]
    fn dichotomy_is_order_independent(indices in proptest::collection::vec(0usize..6, 1..6)) {
        let pool = ["complete:4", "bipartite:3,3", "tripod:2,2,2", "linetripod:1,1,1", "cycle:5", "path:4"];
        let specs: Vec<&str> = indices.iter().map(|&i| pool[i]).collect();
        let forward = decide_bounded(&ForbiddenSet::from_specs(&specs).unwrap(), false);
        let reversed: Vec<&str> = specs.iter().rev().copied().collect();
        let backward = decide_bounded(&ForbiddenSet::from_specs(&reversed).unwrap(), false);
        prop_assert_eq!(forward.bounded, backward.bounded);
        prop_assert_eq!(forward.missing, backward.missing);
    }
}

/// Exhaustive graph6 round-trip over every labeled graph with up to 5
/// vertices.
#[test]
fn graph6_round_trip_exhaustive_small() {
    for n in 0..=5usize {
        let pairs = n * n.saturating_sub(1) / 2;
        for mask in 0u64..(1 << pairs) {
            let g = masks_to_graph(&graph_from_edge_mask(n, mask));
            assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }
}

/// Line graphs of every tripod with at most 10 vertices pass the
/// line-of-tripod recognizer.
#[test]
fn line_graphs_of_small_tripods_are_recognized() {
    for edges in 0..=9usize {
        for tripod in enumerate_tripods_with_edges(edges) {
            if tripod.n() > 10 {
                continue;
            }
            let l = line_graph(&tripod);
            assert!(
                twbound::recognition::is_line_of_tripod(&l, false).member,
                "line graph of a {}-edge tripod rejected",
                edges
            );
        }
    }
}
