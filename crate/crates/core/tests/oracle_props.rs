mod common;

use mag_core::oracle::{
    adjacency_matrix, boolean_closure, compare_orders, reach_bfs_first, reach_bfs_first_boolean,
    reach_sub_first, reach_sub_first_boolean, reachability_closure, reachability_closure_dense,
    scale_adjacency, spectral_radius_estimate, Arithmetic, POSITIVE_THRESHOLD,
};
use mag_core::subdet::{aggregate_mag, build_subdet_matrix};
use mag_core::{CompositeDigraph, SparseMatrix};
use proptest::prelude::*;

fn transitive_pairs(g: &CompositeDigraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        for (t, d) in g.bfs_distances(s).into_iter().enumerate() {
            if d.is_some() && s != t {
                out.push((s, t));
            }
        }
    }
    out
}

#[test]
fn spurious_pairs_only_ever_added() {
    for seed in 0..60u64 {
        let order = 2 + (seed % 2) as usize;
        let mag = common::random_test_mag(seed, order, 48, (0.05, 0.3));
        for zeta in common::proper_zetas(order) {
            let cmp = compare_orders(&mag, &zeta, Arithmetic::Boolean).unwrap();
            assert!(cmp.missing.is_empty());
            for pair in &cmp.bfs_first {
                assert!(cmp.sub_first.binary_search(pair).is_ok());
            }
            // the aggregate digraph's own transitive closure is the sub-first pattern
            let agg = aggregate_mag(&mag, &zeta).unwrap();
            assert_eq!(transitive_pairs(&agg), cmp.sub_first);
        }
    }
}

#[test]
fn real_and_boolean_patterns_agree_on_small_graphs() {
    for seed in 0..25u64 {
        let mag = common::random_test_mag(seed, 2, 12, (0.05, 0.3));
        for zeta in common::proper_zetas(2) {
            let b = compare_orders(&mag, &zeta, Arithmetic::Boolean).unwrap();
            let r = compare_orders(&mag, &zeta, Arithmetic::Real).unwrap();
            assert_eq!(b, r, "seed {seed}");
        }
    }
}

#[test]
fn real_orders_match_boolean_orders() {
    for seed in 0..15u64 {
        let mag = common::random_test_mag(seed, 2, 12, (0.05, 0.3));
        let g = CompositeDigraph::from_mag(&mag);
        let jr = scale_adjacency(&adjacency_matrix::<f64>(&g)).unwrap();
        let jb = adjacency_matrix::<bool>(&g);
        for zeta in common::proper_zetas(2) {
            let m = build_subdet_matrix(mag.companion(), &zeta).unwrap();
            assert_eq!(
                reach_bfs_first(&jr, &m).unwrap().pattern_above(POSITIVE_THRESHOLD),
                reach_bfs_first_boolean(&jb, &m).unwrap()
            );
            assert_eq!(
                reach_sub_first(&jr, &m).unwrap().pattern_above(POSITIVE_THRESHOLD),
                reach_sub_first_boolean(&jb, &m).unwrap()
            );
        }
    }
}

fn dag_strategy() -> impl Strategy<Value = CompositeDigraph> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * n).prop_map(move |bits| {
            let arcs = (0..n * n)
                .filter(|&k| bits[k] && k / n < k % n)
                .map(|k| (k / n, k % n));
            CompositeDigraph::from_arcs(n, arcs)
        })
    })
}

fn digraph_strategy() -> impl Strategy<Value = CompositeDigraph> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.25), n * n).prop_map(move |bits| {
            let arcs = (0..n * n)
                .filter(|&k| bits[k] && k / n != k % n)
                .map(|k| (k / n, k % n));
            CompositeDigraph::from_arcs(n, arcs)
        })
    })
}

proptest! {
    #[test]
    fn nilpotent_series_equals_inverse(g in dag_strategy()) {
        let j = adjacency_matrix::<f64>(&g);
        prop_assert_eq!(spectral_radius_estimate(&j, 1000, 1e-9).unwrap(), 0.0);
        let jr = scale_adjacency(&j).unwrap();
        let series = reachability_closure(&jr).unwrap();
        let dense = reachability_closure_dense(&jr).unwrap();
        prop_assert_eq!(series.pattern(), dense.pattern());
        for (r, c, v) in series.entries() {
            prop_assert!((v - dense.get(r, c)).abs() < 1e-9);
        }
    }

    #[test]
    fn closure_pattern_is_reachability(g in digraph_strategy()) {
        let jr = scale_adjacency(&adjacency_matrix::<f64>(&g)).unwrap();
        let closure = reachability_closure(&jr).unwrap();
        let boolean = boolean_closure(&adjacency_matrix::<bool>(&g)).unwrap();
        prop_assert_eq!(closure.pattern_above(POSITIVE_THRESHOLD), boolean.clone());
        prop_assert_eq!(boolean.off_diagonal(), transitive_pairs(&g));
    }

    #[test]
    fn scaled_matrix_is_convergent(g in digraph_strategy()) {
        let j = adjacency_matrix::<f64>(&g);
        let rho = spectral_radius_estimate(&j, 10_000, 1e-9).unwrap();
        let scaled = scale_adjacency(&j).unwrap();
        let rho_scaled = spectral_radius_estimate(&scaled, 10_000, 1e-9).unwrap();
        prop_assert!(rho_scaled < 1.0);
        prop_assert!(rho <= (g.vertex_count().saturating_sub(1)) as f64 + 1e-6);
    }
}

#[test]
fn spectral_examples() {
    let k5 = CompositeDigraph::from_arcs(
        5,
        (0..5).flat_map(|u| (0..5).filter(move |&v| v != u).map(move |v| (u, v))),
    );
    let rho = spectral_radius_estimate(&adjacency_matrix(&k5), 10_000, 1e-9).unwrap();
    assert!((rho - 4.0).abs() <= 1e-9 * 4.0);
    let cycle = CompositeDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]);
    let j = adjacency_matrix::<f64>(&cycle);
    assert!((spectral_radius_estimate(&j, 10_000, 1e-9).unwrap() - 1.0).abs() <= 1e-9);
    let scaled = scale_adjacency(&j).unwrap();
    for (_, _, v) in scaled.entries() {
        assert!((v - 0.5).abs() < 1e-8 && v < 0.5);
    }
    let zero = SparseMatrix::<f64>::zeros(3, 3);
    assert!(scale_adjacency(&zero).unwrap().is_zero_matrix());
    assert_eq!(
        reachability_closure(&zero).unwrap(),
        SparseMatrix::identity(3)
    );
}
