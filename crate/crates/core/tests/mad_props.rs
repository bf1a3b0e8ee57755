//! Exact maximum average degree against subset enumeration.

use num_rational::Ratio;
use proptest::prelude::*;

use recolor_core::structure::mad;
use recolor_core::Graph;

fn brute(g: &Graph) -> Ratio<i64> {
    let n = g.id_bound();
    let edges: Vec<_> = g.edges().collect();
    (1u32..1 << n)
        .map(|s| {
            let m = edges
                .iter()
                .filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1)
                .count();
            Ratio::new(2 * m as i64, s.count_ones() as i64)
        })
        .max()
        .unwrap()
}

fn graph(n: usize, bits: &[bool]) -> Graph {
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
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_brute_force(n in 1usize..=10, bits in proptest::collection::vec(proptest::bool::weighted(0.35), 45)) {
        let g = graph(n, &bits);
        let m = mad(&g).unwrap();
        prop_assert_eq!(m.value, brute(&g));
        let w = &m.witness;
        let inside = g.edges().filter(|(u, v)| w.contains(u) && w.contains(v)).count();
        prop_assert_eq!(Ratio::new(2 * inside as i64, w.len() as i64), m.value);
    }

    #[test]
    fn at_least_average_degree(n in 1usize..=10, bits in proptest::collection::vec(any::<bool>(), 45)) {
        let g = graph(n, &bits);
        let avg = Ratio::new(2 * g.num_edges() as i64, n as i64);
        prop_assert!(mad(&g).unwrap().value >= avg);
    }
}
