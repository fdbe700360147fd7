//! Property tests for the invariants that hold across modules.

use proptest::prelude::*;
use tfchrom::canon::{automorphism_group_order, canonical_key, DedupStore};
use tfchrom::classify::{CountReport, GraphRecord};
use tfchrom::color::{chromatic_number, is_critical, is_vertex_critical};
use tfchrom::graph6;
use tfchrom::mtfgen::mtf_closure;
use tfchrom::par::map_sharded;
use tfchrom::Graph;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if it.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
    })
}

/// Random triangle-free graph: edges are kept in order unless they close a
/// triangle.
fn triangle_free_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n).prop_map(|dense| {
        let mut g = Graph::new(dense.order());
        for (u, v) in dense.edges() {
            if (g.neighbours(u) & g.neighbours(v)).is_empty() {
                g.add_edge(u, v);
            }
        }
        g
    })
}

fn relabelled(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let perm: Vec<usize> = (0..g.order()).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trips(g in graph_strategy(70)) {
        let text = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn canonical_key_ignores_labels((g, perm) in relabelled(16)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        prop_assert_eq!(automorphism_group_order(&g), automorphism_group_order(&h));
        prop_assert_eq!(canonical_key(&g).to_graph().degree_sequence(), g.degree_sequence());
    }

    #[test]
    fn mtf_means_diameter_two(g in triangle_free_strategy(10)) {
        if g.order() >= 3 {
            prop_assert_eq!(g.is_mtf(), g.diameter().is_some_and(|d| d <= 2));
        }
    }

    #[test]
    fn closure_gives_mtf_supergraphs(g in triangle_free_strategy(9)) {
        let closures = mtf_closure(&g).unwrap();
        prop_assert!(!closures.is_empty());
        let mut keys = DedupStore::new();
        for c in &closures {
            prop_assert_eq!(c.order(), g.order());
            prop_assert!(c.is_mtf());
            prop_assert!(keys.insert(c));
        }
        // The labelled closure that keeps g's labels must be among them.
        let mut greedy = g.clone();
        for v in 0..g.order() {
            for u in 0..v {
                if !greedy.has_edge(u, v) && (greedy.neighbours(u) & greedy.neighbours(v)).is_empty() {
                    greedy.add_edge(u, v);
                }
            }
        }
        prop_assert!(keys.contains(&canonical_key(&greedy)));
    }

    #[test]
    fn closure_after_vertex_deletion_keeps_order(g in triangle_free_strategy(9)) {
        if g.order() >= 2 {
            let h = g.delete_vertex(0);
            for c in mtf_closure(&h).unwrap() {
                prop_assert_eq!(c.order(), g.order() - 1);
            }
        }
    }

    #[test]
    fn edge_removal_lowers_chi_by_at_most_one(g in graph_strategy(9)) {
        let chi = chromatic_number(&g);
        for (u, v) in g.edges() {
            let c = chromatic_number(&g.without_edge(u, v));
            prop_assert!(c == chi || c + 1 == chi);
        }
    }

    #[test]
    fn critical_implies_vertex_critical(g in triangle_free_strategy(9)) {
        let chi = chromatic_number(&g);
        if chi > 0 && is_critical(&g, chi).unwrap() {
            prop_assert!(is_vertex_critical(&g, chi).unwrap());
        }
    }

    #[test]
    fn mycielski_raises_chi(g in triangle_free_strategy(9)) {
        let m = g.mycielski();
        prop_assert_eq!(m.order(), 2 * g.order() + 1);
        prop_assert!(m.is_triangle_free());
        prop_assert_eq!(chromatic_number(&m), chromatic_number(&g) + 1);
    }

    #[test]
    fn dedup_is_order_independent(
        gs in prop::collection::vec(graph_strategy(6), 0..40).prop_shuffle(),
    ) {
        let mut a = DedupStore::new();
        let mut b = DedupStore::new();
        for g in &gs {
            a.insert(g);
        }
        for g in gs.iter().rev() {
            b.insert(g);
        }
        prop_assert_eq!(a.sorted_keys(), b.sorted_keys());
        prop_assert_eq!(a.accepted_count() + a.rejected_count(), gs.len() as u64);
    }

    #[test]
    fn report_merge_matches_single_pass(
        gs in prop::collection::vec(triangle_free_strategy(8), 0..30),
        split in 0usize..30,
    ) {
        let records: Vec<GraphRecord> = gs.into_iter().map(GraphRecord::new).collect();
        let split = split.min(records.len());
        let whole: CountReport = records.iter().collect();
        let mut left: CountReport = records[..split].iter().collect();
        let right: CountReport = records[split..].iter().collect();
        left.merge(&right);
        prop_assert_eq!(&left, &whole);
        prop_assert!(whole.is_consistent());
        prop_assert_eq!(CountReport::from_json_lines(&whole.to_json_lines()).unwrap(), whole);
    }

    #[test]
    fn sharding_preserves_order(items in prop::collection::vec(any::<u32>(), 0..200), workers in 1usize..9) {
        let seq: Vec<u64> = items.iter().map(|&x| x as u64 * 3).collect();
        prop_assert_eq!(map_sharded(&items, workers, |&x| x as u64 * 3), seq);
    }
}
