//! End-to-end reconfiguration on generated instances.

use proptest::prelude::*;

use recolor_core::discharge::{audit_planar, audit_sparse};
use recolor_core::generate::{generate_with, Family, GenOptions};
use recolor_core::recolor::verify;
use recolor_core::reduce::driver::{reconfigure, Theorem};
use recolor_core::reduce::PipelineError;
use recolor_core::{Coloring, Graph, ListAssignment};

fn theorem_for(f: Family) -> Theorem {
    if f.is_planar() {
        Theorem::Planar6
    } else {
        Theorem::Mad4
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn sequences_verify_within_budget(fam in 0usize..5, n in 5usize..45, seed in any::<u64>(), sparse_on_cycle in any::<bool>()) {
        let f = Family::ALL[fam];
        let theorem = if f == Family::Cycle && sparse_on_cycle { Theorem::Mad4 } else { theorem_for(f) };
        let opts = GenOptions { list_size: Some(theorem.list_size()), palette: None };
        let b = generate_with(f, n, seed, &opts).unwrap();
        let out = reconfigure(theorem, &b.graph, &b.lists, &b.alpha, &b.beta).unwrap();
        let rep = verify(&b.graph, &b.lists, &out.sequence, Some(&b.beta), Some(theorem.budget()));
        prop_assert!(rep.ok, "{:?}", rep);
        prop_assert!(out.counts.iter().all(|&c| c <= theorem.budget()));
        let again = reconfigure(theorem, &b.graph, &b.lists, &b.alpha, &b.beta).unwrap();
        prop_assert_eq!(again.sequence.steps, out.sequence.steps);
    }

    #[test]
    fn planar_charges_sum_to_minus_twelve(fam in prop::sample::select(vec![Family::Grid5, Family::VertexDisjoint4Cycles, Family::Cycle]), n in 5usize..60, seed in any::<u64>()) {
        let b = generate_with(fam, n, seed, &GenOptions::default()).unwrap();
        let a = audit_planar(&b.graph).unwrap();
        prop_assert!(a.ledger.conserves());
        if a.connected {
            prop_assert_eq!(a.ledger.sum_initial(), num_rational::Ratio::from_integer(-12));
        }
    }

    #[test]
    fn sparse_charges_are_conserved(fam in prop::sample::select(vec![Family::Girth10Subdiv, Family::SparseTree2Threads, Family::Cycle]), n in 5usize..60, seed in any::<u64>()) {
        let b = generate_with(fam, n, seed, &GenOptions::default()).unwrap();
        prop_assert!(audit_sparse(&b.graph).ledger.conserves());
    }
}

fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn cycle_instance(n: usize, size: u32) -> (Graph, ListAssignment, Coloring, Coloring) {
    let g = cycle(n);
    let palette: Vec<u32> = (1..=size).collect();
    let l = ListAssignment::uniform(n, &palette);
    let a = Coloring::new(
        (0..n)
            .map(|i| Some(1 + (i % 2) as u32 + if i == n - 1 && n % 2 == 1 { 2 } else { 0 }))
            .collect(),
    );
    let b = Coloring::new(
        (0..n)
            .map(|i| Some(3 + (i % 2) as u32 - if i == n - 1 && n % 2 == 1 { 2 } else { 0 }))
            .collect(),
    );
    (g, l, a, b)
}

#[test]
fn rejects_short_lists() {
    let (g, l, a, b) = cycle_instance(6, 4);
    let err = reconfigure(Theorem::Planar6, &g, &l, &a, &b).unwrap_err();
    assert!(matches!(err, PipelineError::ListTooSmall { need: 6, .. }));
}

#[test]
fn rejects_triangles_for_planar() {
    let (g, l, a, b) = cycle_instance(3, 6);
    let err = reconfigure(Theorem::Planar6, &g, &l, &a, &b).unwrap_err();
    assert!(matches!(err, PipelineError::NotPlanarClass(_)));
}

#[test]
fn rejects_dense_graphs_for_mad() {
    // K4 has mad 3.
    let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let l = ListAssignment::uniform(4, &[1, 2, 3, 4, 5]);
    let a = Coloring::new(vec![Some(1), Some(2), Some(3), Some(4)]);
    let b = Coloring::new(vec![Some(2), Some(3), Some(4), Some(5)]);
    let err = reconfigure(Theorem::Mad4, &g, &l, &a, &b).unwrap_err();
    assert!(matches!(err, PipelineError::MadTooLarge(_)));
}

#[test]
fn rejects_improper_endpoints() {
    let (g, l, a, _) = cycle_instance(6, 4);
    let bad = Coloring::new(vec![Some(1); 6]);
    let err = reconfigure(Theorem::Mad4, &g, &l, &a, &bad).unwrap_err();
    assert!(matches!(err, PipelineError::ImproperEndpoint(_)));
}

#[test]
fn odd_cycle_with_four_lists() {
    let (g, l, a, b) = cycle_instance(7, 4);
    let out = reconfigure(Theorem::Mad4, &g, &l, &a, &b).unwrap();
    assert!(verify(&g, &l, &out.sequence, Some(&b), Some(18)).ok);
}
