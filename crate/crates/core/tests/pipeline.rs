//! End-to-end checks across generation, extension, expansion and
//! classification at small orders.

use std::collections::BTreeSet;

use tfchrom::canon::canonical_key;
use tfchrom::classify::{classify_stream, CountReport};
use tfchrom::color::{chromatic_number, is_vertex_critical};
use tfchrom::expand::{descend_order, expand_by_edge_removal, heuristic_search, HeuristicConfig};
use tfchrom::extend::{extend_all, min_max_degree, ExtensionSpec};
use tfchrom::mtfgen::{generate_mtf, generate_triangle_free, mtf_closure};
use tfchrom::{GirthMode, Graph};

fn mtf_k(n: usize, k: usize) -> Vec<Graph> {
    generate_mtf(n, 2)
        .into_iter()
        .filter(|g| chromatic_number(g) == k)
        .collect()
}

fn hosts(spec: &ExtensionSpec) -> Vec<Graph> {
    let m = spec.host_order().unwrap();
    generate_triangle_free(m, Some(spec.host_max_degree()), spec.girth, 1)
        .into_iter()
        .filter(|g| chromatic_number(g) == spec.k - 1)
        .collect()
}

#[test]
fn extension_outputs_have_the_target_parameters() {
    let mut all = BTreeSet::new();
    for d in min_max_degree(4)..13 {
        let spec = ExtensionSpec::new(4, 13, d);
        let out = extend_all(&spec, &hosts(&spec), 1).unwrap();
        for e in &out.graphs {
            let g = &e.graph;
            assert_eq!(g.order(), 13);
            assert_eq!(g.max_degree(), d);
            assert!(g.is_mtf());
            assert_eq!(chromatic_number(g), 4);
            assert_eq!(e.key, canonical_key(g));
            assert!(all.insert(e.key.clone()));
        }
    }
    let direct: BTreeSet<_> = mtf_k(13, 4).iter().map(canonical_key).collect();
    assert_eq!(all, direct);
}

#[test]
fn girth_five_extension_matches_filtered_generation() {
    // 3-chromatic graphs of girth at least 5 on 10 vertices with a vertex v
    // of maximum degree whose neighbours all have degree 2 or more (as in any
    // vertex-critical graph) and with G - N[v] 2-chromatic, by both routes.
    let mut by_extension = BTreeSet::new();
    for d in min_max_degree(3)..10 {
        let spec = ExtensionSpec::new(3, 10, d).with_girth(GirthMode::AtLeastFive);
        for e in extend_all(&spec, &hosts(&spec), 1).unwrap().graphs {
            assert!(e.graph.girth().is_none_or(|g| g >= 5));
            by_extension.insert(e.key);
        }
    }
    let direct: BTreeSet<_> = generate_triangle_free(10, None, GirthMode::AtLeastFive, 1)
        .iter()
        .filter(|g| chromatic_number(g) == 3)
        .filter(|g| {
            let d = g.max_degree();
            (0..10).any(|v| {
                g.degree(v) == d
                    && g.neighbours(v).iter().all(|u| g.degree(u) >= 2)
                    && chromatic_number(&g.delete_closed_neighbourhood(v)) == 2
            })
        })
        .map(canonical_key)
        .collect();
    let only_ext: Vec<_> = by_extension.difference(&direct).collect();
    let only_direct: Vec<_> = direct.difference(&by_extension).collect();
    assert!(only_ext.is_empty() && only_direct.is_empty(), "{only_ext:?} / {only_direct:?}");
}

#[test]
fn expansion_round_trips_through_closure() {
    let all12 = expand_by_edge_removal(&mtf_k(12, 4), 4, 1).graphs;
    assert_eq!(all12.len(), 24);
    for g in &all12 {
        let closures = mtf_closure(g).unwrap();
        let back = expand_by_edge_removal(&closures, 4, 1);
        assert!(back.rejected.is_empty());
        let keys: BTreeSet<_> = back.graphs.iter().map(canonical_key).collect();
        assert!(keys.contains(&canonical_key(g)));
    }
}

#[test]
fn classification_report_is_consistent() {
    let all12 = expand_by_edge_removal(&mtf_k(12, 4), 4, 2).graphs;
    let classified = classify_stream(&all12, 4, 2);
    assert!(classified.issues.is_empty());
    let report: CountReport = classified.records.iter().collect();
    assert!(report.is_consistent());
    let row = report.row(12).unwrap();
    assert_eq!(row.total, 24);
    assert_eq!(row.mtf, 5);
    for r in &classified.records {
        assert_eq!(r.is_mtf, r.graph.is_mtf());
        assert!(!r.is_critical || r.is_vertex_critical);
    }
}

#[test]
fn harvested_graphs_descend_to_smaller_graphs() {
    let out = heuristic_search(&mtf_k(12, 4), 4, &HeuristicConfig::default());
    assert!(!out.harvest.is_empty());
    for h in &out.harvest {
        assert!(!is_vertex_critical(h, 4).unwrap());
        for d in descend_order(h, 4).unwrap() {
            assert_eq!(d.order(), 11);
            assert_eq!(chromatic_number(&d), 4);
        }
    }
    let journal_pools: Vec<usize> = out.journal.iter().map(|r| r.pool_size).collect();
    assert!(journal_pools.windows(2).all(|w| w[0] <= w[1]));
}
