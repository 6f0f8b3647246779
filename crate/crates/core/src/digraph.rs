use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::mag::MagGraph;

/// Compressed out-adjacency of the directed graph of composite vertices.
///
/// Successor lists are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeDigraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl CompositeDigraph {
    /// Builds the digraph from arcs; repeated arcs collapse to one.
    ///
    /// # Panics
    ///
    /// If an arc endpoint is `>= n`.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &arcs {
            assert!(u < n && v < n, "arc ({u}, {v}) outside 0..{n}");
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = arcs.into_iter().map(|(_, v)| v).collect();
        CompositeDigraph { offsets, targets }
    }

    /// The isomorphic digraph `g(H)`: one vertex per composite vertex, one arc per edge.
    pub fn from_mag(mag: &MagGraph) -> Self {
        Self::from_arcs(mag.vertex_count(), mag.edges().iter().copied())
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.successors(u).binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| self.successors(u).iter().map(move |&v| (u, v)))
    }

    pub fn reversed(&self) -> Self {
        Self::from_arcs(self.vertex_count(), self.arcs().map(|(u, v)| (v, u)))
    }

    /// Hop distances from `source`, `None` where unreachable.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or_default();
            for &w in self.successors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// True when the graph has no directed cycle (self-loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indegree = vec![0usize; n];
        for &v in &self.targets {
            indegree[v] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in self.successors(v) {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }
}
