mod common;

use bloom_mst::analysis::{edge_error_rate, incorrect_edges};
use bloom_mst::graph::{generate_graph, GeneratorConfig};
use bloom_mst::mst::{prim_baseline, prim_bloom, prim_with_visited, recover_edges, ExactSet};

use common::{is_forest, kruskal, rel_close};

#[test]
fn baseline_matches_kruskal_on_generated_graphs() {
    for seed in 0..20 {
        let g = generate_graph(&GeneratorConfig::new(100, seed)).unwrap();
        let base = prim_baseline(&g, 0).unwrap();
        let (cost, ids) = kruskal(&g);
        assert!(rel_close(base.total_cost, cost, 1e-9));
        // continuous weights: the tree itself is unique
        assert_eq!(base.edge_bits.ones().collect::<Vec<_>>(), ids);
    }
}

#[test]
fn baseline_spans_generated_graph() {
    let g = generate_graph(&GeneratorConfig::new(1000, 42)).unwrap();
    let r = prim_baseline(&g, 0).unwrap();
    assert_eq!(r.spanned_node_count, 1000);
    let edges = recover_edges(&r, &g).unwrap();
    assert_eq!(edges.len(), 999);
    assert!(is_forest(1000, &edges));
    let sum: f64 = edges.iter().map(|e| e.weight).sum();
    assert!(rel_close(sum, r.total_cost, 1e-9));
}

#[test]
fn start_node_does_not_change_unique_tree() {
    let g = generate_graph(&GeneratorConfig::new(300, 5)).unwrap();
    let a = prim_baseline(&g, 0).unwrap();
    let b = prim_baseline(&g, 177).unwrap();
    assert_eq!(a.edge_bits, b.edge_bits);
}

#[test]
fn exact_set_variant_is_bit_identical() {
    for seed in 0..10 {
        let g = generate_graph(&GeneratorConfig::new(500, seed)).unwrap();
        let a = prim_baseline(&g, 0).unwrap();
        let b = prim_with_visited(&g, 0, &mut ExactSet::new()).unwrap();
        assert_eq!(a.total_cost.to_bits(), b.total_cost.to_bits());
        assert_eq!(a.edge_bits, b.edge_bits);
    }
}

#[test]
fn bloom_solver_undercounts() {
    for seed in 0..10 {
        let g = generate_graph(&GeneratorConfig::new(2000, seed)).unwrap();
        let base = prim_baseline(&g, 0).unwrap();
        let bloom = prim_bloom(&g, 0, 0.01, 0).unwrap();
        assert!(bloom.selected_edge_count <= base.selected_edge_count);
        let rate = edge_error_rate(&base, &bloom).unwrap();
        assert!(rate < 0.02, "rate {rate}");
        assert!(incorrect_edges(&base, &bloom).unwrap() >= base.selected_edge_count - bloom.selected_edge_count);
    }
}

#[test]
fn looser_filter_makes_more_mistakes() {
    let g = generate_graph(&GeneratorConfig::new(5000, 1)).unwrap();
    let base = prim_baseline(&g, 0).unwrap();
    let tight = prim_bloom(&g, 0, 0.001, 0).unwrap();
    let loose = prim_bloom(&g, 0, 0.2, 0).unwrap();
    let tight_rate = edge_error_rate(&base, &tight).unwrap();
    let loose_rate = edge_error_rate(&base, &loose).unwrap();
    assert!(loose_rate > tight_rate, "{loose_rate} vs {tight_rate}");
}

#[test]
fn edge_count_near_thirteen_per_node() {
    let counts: Vec<usize> = (0..100)
        .map(|s| generate_graph(&GeneratorConfig::new(1000, s)).unwrap().edge_count())
        .collect();
    assert!(counts.iter().all(|&c| (999..=25_999).contains(&c)));
    let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
    // 999 backbone edges plus ~13 extra per node, a little lost to skipped duplicates
    assert!((13_000.0..14_500.0).contains(&mean), "mean {mean}");
}

#[test]
fn cost_dominance_is_not_universal() {
    // A single skipped node can force its subtree onto dearer edges.
    let g = generate_graph(&GeneratorConfig::new(1000, 15)).unwrap();
    let base = prim_baseline(&g, 0).unwrap();
    let bloom = prim_bloom(&g, 0, 0.01, 0).unwrap();
    assert_eq!(bloom.spanned_node_count, 998);
    assert!(bloom.total_cost > base.total_cost);
}

#[test]
fn cost_dominance_holds_at_larger_sizes() {
    for seed in 0..10 {
        let g = generate_graph(&GeneratorConfig::new(11_000, seed)).unwrap();
        let base = prim_baseline(&g, 0).unwrap();
        let bloom = prim_bloom(&g, 0, 0.01, 0).unwrap();
        assert!(bloom.total_cost <= base.total_cost, "seed {seed}");
    }
}
