use alloc::vec::Vec;

use super::ClosenessMode;
use crate::digraph::CompositeDigraph;

/// Closeness of one vertex from its distances to every vertex of an
/// `N`-vertex domain (`None` = unreachable, the vertex itself at 0).
pub fn closeness_from_distances(dist: &[Option<usize>], mode: ClosenessMode) -> f64 {
    match mode {
        ClosenessMode::Harmonic => dist
            .iter()
            .flatten()
            .filter(|&&d| d > 0)
            .map(|&d| 1.0 / d as f64)
            .sum(),
        ClosenessMode::Classic => {
            let reached = dist.iter().flatten().count();
            let total: usize = dist.iter().flatten().sum();
            if reached <= 1 || total == 0 {
                return 0.0;
            }
            let r = (reached - 1) as f64;
            r * r / ((dist.len() - 1) as f64 * total as f64)
        }
    }
}

pub fn closeness_composite(g: &CompositeDigraph, mode: ClosenessMode) -> Vec<f64> {
    (0..g.vertex_count())
        .map(|v| closeness_from_distances(&g.bfs_distances(v), mode))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn path_harmonic() {
        let g = CompositeDigraph::from_arcs(3, [(0, 1), (1, 2)]);
        assert_eq!(closeness_composite(&g, ClosenessMode::Harmonic), vec![1.5, 1.0, 0.0]);
    }

    #[test]
    fn path_classic() {
        let g = CompositeDigraph::from_arcs(3, [(0, 1), (1, 2)]);
        // v=0: r=3, Σd=3 → 4/(2·3); v=1: r=2, Σd=1 → 1/2
        let c = closeness_composite(&g, ClosenessMode::Classic);
        assert!((c[0] - 4.0 / 6.0).abs() < 1e-15);
        assert_eq!(c[1], 0.5);
        assert_eq!(c[2], 0.0);
    }

    #[test]
    fn complete_and_edgeless() {
        let k = 5;
        let arcs = (0..k).flat_map(|u| (0..k).filter(move |&v| v != u).map(move |v| (u, v)));
        let g = CompositeDigraph::from_arcs(k, arcs);
        assert!(closeness_composite(&g, ClosenessMode::Harmonic).iter().all(|&c| c == 4.0));
        assert!(closeness_composite(&g, ClosenessMode::Classic).iter().all(|&c| c == 1.0));
        let e = CompositeDigraph::from_arcs(4, []);
        assert!(closeness_composite(&e, ClosenessMode::Harmonic).iter().all(|&c| c == 0.0));
        assert!(closeness_composite(&e, ClosenessMode::Classic).iter().all(|&c| c == 0.0));
    }
}
