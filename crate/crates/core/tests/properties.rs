//! Property tests for the structural invariants: boundary behaviour,
//! complement involution, serialization round trips, handshake
//! counting, and expansion monotonicity under edge addition.

use expander_core::graph::{parse_edge_list, serialize, Graph};
use expander_core::metrics::{cheeger_h, expander_constant, fixed_expander_constant};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(proptest::bool::ANY, pairs.len()).prop_map(move |include| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().zip(&include).filter(|(_, &inc)| inc).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).expect("generated edges valid")
        })
    })
}

proptest! {
    #[test]
    fn boundary_disjoint_and_in_range(g in arb_graph(10), bits in proptest::collection::vec(proptest::bool::ANY, 10)) {
        let a: BTreeSet<usize> = (0..g.n()).filter(|&v| bits[v]).collect();
        let boundary = g.boundary(&a).unwrap();
        prop_assert!(boundary.is_disjoint(&a));
        prop_assert!(boundary.iter().all(|&v| v < g.n()));
    }

    #[test]
    fn complement_is_involutive(g in arb_graph(10)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn handshake(g in arb_graph(12)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn serialize_parse_round_trip(g in arb_graph(12)) {
        let (back, dups) = parse_edge_list(&serialize(&g)).unwrap();
        prop_assert_eq!(back, g);
        prop_assert_eq!(dups, 0);
    }

    #[test]
    fn edge_addition_is_monotone(g in arb_graph(8), extra in 0usize..28) {
        let n = g.n();
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!missing.is_empty());
        let e = missing[extra % missing.len()];
        let mut edges = g.edges();
        edges.push(e);
        let bigger = Graph::from_edges(n, &edges).unwrap();

        prop_assert!(
            expander_constant(&bigger).unwrap().constant
                >= expander_constant(&g).unwrap().constant
        );
        prop_assert!(
            fixed_expander_constant(&bigger).unwrap().constant
                >= fixed_expander_constant(&g).unwrap().constant
        );
        prop_assert!(cheeger_h(&bigger).unwrap().value >= cheeger_h(&g).unwrap().value);
    }

    #[test]
    fn cheeger_sandwich(g in arb_graph(9)) {
        prop_assume!(g.is_connected());
        let h = cheeger_h(&g).unwrap().value;
        let hp = expander_core::metrics::cheeger_h_prime(&g).unwrap().value;
        prop_assert!(h <= hp);
        prop_assert!(hp <= h * 2);
    }
}
