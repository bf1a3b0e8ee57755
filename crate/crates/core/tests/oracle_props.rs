//! Oracle consistency: distances form a metric, bounded search agrees with
//! plain reachability, and the pipeline never beats a shortest path.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use recolor_core::generate::{generate_with, random_lists, Family, GenOptions};
use recolor_core::oracle::{
    bfs_distance, enumerate_colorings, kgood_reachable, shortest_sequence, KGood,
};
use recolor_core::recolor::verify;
use recolor_core::reduce::driver::{reconfigure, Theorem};
use recolor_core::{Graph, ListAssignment};

fn small_graph(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn distance_is_a_metric(n in 1usize..=5, bits in proptest::collection::vec(proptest::bool::weighted(0.4), 10), seed in any::<u64>()) {
        let g = small_graph(n, &bits);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists = random_lists(&g, 3, 4, &mut rng);
        let all = enumerate_colorings(&g, &lists, 100_000).unwrap();
        let cs: Vec<_> = all.iter().collect();
        if cs.is_empty() {
            return Ok(());
        }
        let pick: Vec<_> = (0..3).map(|_| cs.choose(&mut rng).unwrap().clone()).collect();
        let d = |i: usize, j: usize| bfs_distance(&g, &lists, &pick[i], &pick[j], 100_000).unwrap();
        prop_assert_eq!(d(0, 0), Some(0));
        prop_assert_eq!(d(0, 1), d(1, 0));
        if let (Some(a), Some(b), Some(c)) = (d(0, 2), d(0, 1), d(1, 2)) {
            prop_assert!(a <= b + c);
        }
        // Unbounded search agrees with reachability, bounded search is
        // monotone in the budget.
        let free = kgood_reachable(&g, &lists, &pick[0], &pick[1], None, 1_000_000).unwrap();
        prop_assert_eq!(free.is_yes(), d(0, 1).is_some());
        let mut seen_yes = false;
        for k in 0..4 {
            let r = kgood_reachable(&g, &lists, &pick[0], &pick[1], Some(k), 1_000_000).unwrap();
            let known = !matches!(r, KGood::Unknown { .. });
            prop_assert!(known);
            if seen_yes {
                prop_assert!(r.is_yes());
            }
            if let KGood::Yes(w) = &r {
                seen_yes = true;
                prop_assert!(verify(&g, &lists, w, Some(&pick[1]), Some(k)).ok);
            }
        }
        if let Some(s) = shortest_sequence(&g, &lists, &pick[0], &pick[1], 100_000).unwrap() {
            prop_assert!(verify(&g, &lists, &s, Some(&pick[1]), None).ok);
        }
    }
}

#[test]
fn enumeration_counts_proper_colorings_only() {
    // Path on 3 vertices with identical 3-lists: 3 * 2 * 2.
    let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let l = ListAssignment::uniform(3, &[1, 2, 3]);
    let all = enumerate_colorings(&g, &l, 100).unwrap();
    assert_eq!(all.count(), 12);
    assert!(all.iter().all(|c| c.is_proper(&g, &l)));
}

#[test]
fn pipeline_is_never_shorter_than_a_shortest_path() {
    for (theorem, fam, n) in [
        (Theorem::Mad4, Family::Cycle, 5),
        (Theorem::Mad4, Family::SparseTree2Threads, 6),
        (Theorem::Planar6, Family::VertexDisjoint4Cycles, 5),
        (Theorem::Planar6, Family::Cycle, 4),
    ] {
        for seed in 0..5 {
            let opts = GenOptions {
                list_size: Some(theorem.list_size()),
                palette: None,
            };
            let b = generate_with(fam, n, seed, &opts).unwrap();
            let out = reconfigure(theorem, &b.graph, &b.lists, &b.alpha, &b.beta).unwrap();
            let d = bfs_distance(&b.graph, &b.lists, &b.alpha, &b.beta, 1_000_000)
                .unwrap()
                .unwrap();
            assert!(out.sequence.len() >= d);
            let k = kgood_reachable(
                &b.graph,
                &b.lists,
                &b.alpha,
                &b.beta,
                Some(theorem.budget()),
                1_000_000,
            )
            .unwrap();
            assert!(k.is_yes());
        }
    }
}
