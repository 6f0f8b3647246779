mod common;

use std::collections::VecDeque;

use mag_core::centrality::{
    betweenness_bruteforce, betweenness_composite, betweenness_composite_partial,
    betweenness_composite_with, betweenness_subdet, realize_class_path, DistanceMode, SubDetView,
};
use mag_core::count::{PathCount, SigmaCounter};
use mag_core::oracle::{adjacency_matrix, reach_bfs_first_boolean};
use mag_core::subdet::build_subdet_matrix;
use mag_core::{Aspect, CompositeDigraph, DuplicatePolicy, MagGraph, SubDetMatrix, SubDetSpec};
use proptest::prelude::*;

fn digraph_strategy(max_n: usize) -> impl Strategy<Value = CompositeDigraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |bits| {
            let arcs = (0..n * n)
                .filter(|&k| bits[k] && k / n != k % n)
                .map(|k| (k / n, k % n));
            CompositeDigraph::from_arcs(n, arcs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn brandes_matches_enumeration(g in digraph_strategy(12)) {
        let fast = betweenness_composite(&g);
        let slow = betweenness_bruteforce(&g).unwrap();
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() <= 1e-9, "{fast:?} vs {slow:?}");
        }
        let float = betweenness_composite_with::<f64>(&g);
        for (a, b) in fast.iter().zip(&float) {
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }
    }

    #[test]
    fn partials_add_up(g in digraph_strategy(12), cut in 0usize..12) {
        let n = g.vertex_count();
        let cut = cut.min(n);
        let full = betweenness_composite(&g);
        let a = betweenness_composite_partial::<PathCount>(&g, 0..cut);
        let b = betweenness_composite_partial::<PathCount>(&g, cut..n);
        for i in 0..n {
            prop_assert!((full[i] - a[i] - b[i]).abs() <= 1e-12 * full[i].max(1.0));
        }
    }
}

/// Vertices reachable from `start` by arcs that stay inside `class`.
fn intra_closure(g: &CompositeDigraph, m: &SubDetMatrix, start: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue: VecDeque<usize> = start.iter().copied().collect();
    for &v in start {
        seen[v] = true;
    }
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        out.push(v);
        for &w in g.successors(v) {
            if !seen[w] && m.class_of(w) == m.class_of(v) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    out
}

/// Fewest class transitions by growing the reachable set one transition at
/// a time.
fn layered_distances(g: &CompositeDigraph, m: &SubDetMatrix, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; m.rows()];
    let mut reached = intra_closure(g, m, m.members(s));
    let mut k = 0;
    loop {
        let mut grew = false;
        for &v in &reached {
            if dist[m.class_of(v)].is_none() {
                dist[m.class_of(v)] = Some(k);
                grew = true;
            }
        }
        let mut frontier: Vec<usize> = reached.clone();
        for &v in &reached {
            frontier.extend(g.successors(v).iter().copied());
        }
        frontier.sort_unstable();
        frontier.dedup();
        let next = intra_closure(g, m, &frontier);
        if next.len() == reached.len() && !grew {
            return dist;
        }
        reached = next;
        k += 1;
    }
}

/// Enumerates realisable inter-class arc sequences from class `s`; returns
/// per class the shortest length, the number of shortest sequences, and the
/// betweenness credit (entries into intermediate classes over the count).
fn transition_oracle(g: &CompositeDigraph, m: &SubDetMatrix, s: usize) -> (Vec<Option<usize>>, Vec<u64>, Vec<f64>) {
    let nz = m.rows();
    let dist = layered_distances(g, m, s);
    let max_d = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut sequences: Vec<Vec<usize>> = Vec::new(); // class of each entry
    fn dfs(
        g: &CompositeDigraph,
        m: &SubDetMatrix,
        at: Vec<usize>,
        classes: &mut Vec<usize>,
        budget: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if classes.len() == budget {
            return;
        }
        for &y in &at {
            for &w in g.successors(y) {
                if m.class_of(w) != m.class_of(y) {
                    classes.push(m.class_of(w));
                    out.push(classes.clone());
                    let next = intra_closure(g, m, &[w]);
                    dfs(g, m, next, classes, budget, out);
                    classes.pop();
                }
            }
        }
    }
    let start = intra_closure(g, m, m.members(s));
    dfs(g, m, start, &mut Vec::new(), max_d, &mut sequences);
    let mut sigma = vec![0u64; nz];
    sigma[s] = 1;
    for seq in &sequences {
        let t = *seq.last().unwrap();
        if dist[t] == Some(seq.len()) {
            sigma[t] += 1;
        }
    }
    let mut credit = vec![0.0; nz];
    for seq in &sequences {
        let t = *seq.last().unwrap();
        if dist[t] == Some(seq.len()) && t != s {
            for &c in &seq[..seq.len() - 1] {
                credit[c] += 1.0 / sigma[t] as f64;
            }
        }
    }
    (dist, sigma, credit)
}

#[test]
fn exact_mode_matches_sequence_enumeration() {
    let mut checked = 0;
    for seed in 0..120u64 {
        let mag = common::random_test_mag(seed, 2, 16, (0.05, 0.2));
        for zeta in common::proper_zetas(2) {
            let view = SubDetView::new(&mag, &zeta).unwrap();
            let mut expected = vec![0.0; view.class_count()];
            for s in 0..view.class_count() {
                let search = view.exact_search(s).unwrap();
                let (dist, sigma, credit) = transition_oracle(view.graph(), view.classes(), s);
                assert_eq!(search.class_dist, dist, "seed {seed} zeta {zeta} source {s}");
                for t in 0..view.class_count() {
                    if dist[t].is_some() {
                        assert_eq!(search.class_sigma[t].as_u64(), Some(sigma[t]));
                    }
                    let paths = search.counted_paths(view.graph(), view.classes(), t);
                    if t != s && dist[t].is_some() {
                        assert_eq!(paths.len() as u64, sigma[t]);
                    }
                }
                for (e, c) in expected.iter_mut().zip(&credit) {
                    *e += c;
                }
                checked += 1;
            }
            let got = view.betweenness(DistanceMode::Exact);
            for (a, b) in got.iter().zip(&expected) {
                assert!((a - b).abs() < 1e-9, "seed {seed}: {got:?} vs {expected:?}");
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn exact_counted_paths_are_real() {
    for seed in 0..60u64 {
        let mag = common::random_test_mag(seed, 3, 24, (0.05, 0.3));
        for zeta in common::proper_zetas(3) {
            let view = SubDetView::new(&mag, &zeta).unwrap();
            let (g, m) = (view.graph(), view.classes());
            for s in 0..view.class_count() {
                let search = view.exact_search(s).unwrap();
                for t in 0..view.class_count() {
                    for path in search.counted_paths(g, m, t) {
                        assert_eq!(m.class_of(path[0].0), s);
                        assert_eq!(m.class_of(path.last().unwrap().1), t);
                        for &(y, w) in &path {
                            assert!(g.has_arc(y, w));
                        }
                        for pair in path.windows(2) {
                            let joined = intra_closure(g, m, &[pair[0].1]);
                            assert!(joined.contains(&pair[1].0));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn both_modes_agree_with_the_oracle_on_reachability() {
    for seed in 0..80u64 {
        let order = 2 + (seed % 2) as usize;
        let mag = common::random_test_mag(seed, order, 48, (0.05, 0.3));
        let g = CompositeDigraph::from_mag(&mag);
        let j = adjacency_matrix::<bool>(&g);
        for zeta in common::proper_zetas(order) {
            let m = build_subdet_matrix(mag.companion(), &zeta).unwrap();
            let oracle = reach_bfs_first_boolean(&j, &m).unwrap();
            let view = SubDetView::from_parts(g.clone(), m.clone()).unwrap();
            for s in 0..m.rows() {
                let faithful = view.class_distances(s, DistanceMode::Faithful).unwrap();
                let exact = view.class_distances(s, DistanceMode::Exact).unwrap();
                let layered = layered_distances(&g, &m, s);
                assert_eq!(exact, layered);
                for t in 0..m.rows() {
                    if t == s {
                        continue;
                    }
                    assert_eq!(faithful[t].is_some(), oracle.get(s, t), "seed {seed}");
                    assert_eq!(exact[t].is_some(), oracle.get(s, t));
                }
            }
        }
    }
}

#[test]
fn faithful_predecessors_are_one_step_closer() {
    for seed in 0..40u64 {
        let mag = common::random_test_mag(seed, 2, 30, (0.05, 0.3));
        for zeta in common::proper_zetas(2) {
            let view = SubDetView::new(&mag, &zeta).unwrap();
            for s in 0..view.class_count() {
                let st = view.sub_bfs(s).unwrap();
                assert_eq!(st.dist[s], Some(0));
                assert_eq!(st.sigma[s], PathCount::one());
                for t in 0..view.class_count() {
                    for &p in &st.preds[t] {
                        assert_eq!(st.dist[p].map(|d| d + 1), st.dist[t]);
                    }
                }
                let mut last = 0;
                for &c in &st.order {
                    let d = st.dist[c].unwrap();
                    assert!(d >= last);
                    last = d;
                }
            }
        }
    }
}

fn classes_of(size: usize, count: usize) -> SubDetMatrix {
    let tau = mag_core::CompanionTuple::new(vec![size, count]).unwrap();
    build_subdet_matrix(&tau, &SubDetSpec::from_tuple(&[0, 1]).unwrap()).unwrap()
}

#[test]
fn faithful_distance_can_undershoot() {
    // classes {2c, 2c+1}; class 4 is only reachable through 1→4→6→3→8, four
    // transitions, but 3 belongs to class 1 which the search met at distance 1
    let m = classes_of(2, 5);
    let g = CompositeDigraph::from_arcs(10, [(0, 2), (1, 4), (4, 6), (6, 3), (3, 8)]);
    let view = SubDetView::from_parts(g, m).unwrap();
    let faithful = view.sub_bfs(0).unwrap();
    assert_eq!(faithful.dist[4], Some(2));
    assert_eq!(faithful.preds[4], vec![1]);
    assert_eq!(
        realize_class_path(view.graph(), view.classes(), &[0, 1, 4]),
        None
    );
    let exact = view.exact_search(0).unwrap();
    assert_eq!(exact.class_dist[4], Some(4));
    assert_eq!(
        exact.counted_paths(view.graph(), view.classes(), 4),
        vec![vec![(1, 4), (4, 6), (6, 3), (3, 8)]]
    );
}

#[test]
fn faithful_distance_can_overshoot() {
    // classes {3c, 3c+1, 3c+2}; class 3 is two transitions away through the
    // intra-class chain 3→4→5 of class 1, but the route through classes 2
    // and 4 touches it first in composite hops
    let m = classes_of(3, 5);
    let g = CompositeDigraph::from_arcs(
        15,
        [(0, 6), (6, 12), (12, 10), (1, 3), (3, 4), (4, 5), (5, 9)],
    );
    let view = SubDetView::from_parts(g, m).unwrap();
    assert_eq!(view.sub_bfs(0).unwrap().dist[3], Some(3));
    assert_eq!(view.exact_search(0).unwrap().class_dist[3], Some(2));
}

#[test]
fn singleton_classes_reduce_to_brandes() {
    // second aspect of size 1: every ζ=[1,0] class is one composite vertex
    for seed in 0..30u64 {
        let base = common::random_test_mag(seed, 1, 12, (0.1, 0.4));
        let n = base.vertex_count();
        let mag = MagGraph::from_composite_arcs(
            vec![Aspect::indexed("v", n), Aspect::indexed("layer", 1)],
            base.edges().iter().copied(),
            DuplicatePolicy::Reject,
        )
        .unwrap();
        let zeta = SubDetSpec::from_tuple(&[1, 0]).unwrap();
        let plain = betweenness_composite(&CompositeDigraph::from_mag(&base));
        for mode in [DistanceMode::Faithful, DistanceMode::Exact] {
            let sub = betweenness_subdet(&mag, &zeta, mode).unwrap();
            for (a, b) in sub.scores().iter().zip(&plain) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn zeta_encodings_are_interchangeable() {
    for seed in 0..10u64 {
        let mag = common::random_test_mag(seed, 3, 40, (0.05, 0.2));
        for z in 1..7u64 {
            let by_int = SubDetSpec::from_integer(z, 3).unwrap();
            let tuple: Vec<u8> = (0..3).map(|i| ((z >> i) & 1) as u8).collect();
            let by_tuple = SubDetSpec::from_tuple(&tuple).unwrap();
            let by_text: SubDetSpec = by_tuple.to_string().parse().unwrap();
            assert_eq!(by_int, by_tuple);
            assert_eq!(by_text, by_tuple);
            let a = betweenness_subdet(&mag, &by_int, DistanceMode::Faithful).unwrap();
            let b = betweenness_subdet(&mag, &by_tuple, DistanceMode::Faithful).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn faithful_counted_paths_are_realised_or_reported() {
    // counted class paths of the published procedure either have a composite
    // witness or are flagged; the flagged ones must be genuine non-paths
    for seed in 0..30u64 {
        let mag = common::random_test_mag(seed, 2, 24, (0.05, 0.3));
        for zeta in common::proper_zetas(2) {
            let view = SubDetView::new(&mag, &zeta).unwrap();
            for s in 0..view.class_count() {
                let st = view.sub_bfs(s).unwrap();
                for t in 0..view.class_count() {
                    for p in mag_core::centrality::predecessor_paths(&st, t) {
                        if let Some(walk) = realize_class_path(view.graph(), view.classes(), &p) {
                            for pair in walk.windows(2) {
                                assert!(view.graph().has_arc(pair[0], pair[1]));
                            }
                            let mut classes: Vec<usize> =
                                walk.iter().map(|&v| view.classes().class_of(v)).collect();
                            classes.dedup();
                            assert_eq!(classes, p);
                        }
                    }
                }
            }
        }
    }
}
