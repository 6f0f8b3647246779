use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::SsspState;
use crate::count::{PathCount, SigmaCounter};
use crate::digraph::CompositeDigraph;

/// Unweighted single-source shortest paths from `source`, with full
/// predecessor lists.
pub fn sssp_composite<C: SigmaCounter>(g: &CompositeDigraph, source: usize) -> SsspState<C> {
    let n = g.vertex_count();
    let mut dist = vec![None; n];
    let mut sigma = vec![C::zero(); n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    sigma[source] = C::one();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let dv = dist[v].unwrap_or_default();
        for &w in g.successors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
            if dist[w] == Some(dv + 1) {
                let add = sigma[v].clone();
                sigma[w].add_assign(&add);
                preds[w].push(v);
            }
        }
    }
    SsspState {
        dist,
        sigma,
        preds,
        order,
    }
}

/// Reusable per-thread buffers for the Brandes kernel.
struct Workspace<C> {
    dist: Vec<usize>,
    sigma: Vec<C>,
    delta: Vec<f64>,
    order: Vec<usize>,
}

const UNSEEN: usize = usize::MAX;

impl<C: SigmaCounter> Workspace<C> {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![UNSEEN; n],
            sigma: vec![C::zero(); n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// One source: BFS, then back-propagation over successors one level
    /// further away (equivalent to walking predecessor lists).
    fn run(&mut self, g: &CompositeDigraph, s: usize, scores: &mut [f64]) {
        for &v in &self.order {
            self.dist[v] = UNSEEN;
            self.sigma[v] = C::zero();
            self.delta[v] = 0.0;
        }
        self.order.clear();
        self.dist[s] = 0;
        self.sigma[s] = C::one();
        self.order.push(s);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let next = self.dist[v] + 1;
            for &w in g.successors(v) {
                if self.dist[w] == UNSEEN {
                    self.dist[w] = next;
                    self.order.push(w);
                }
                if self.dist[w] == next {
                    let add = self.sigma[v].clone();
                    self.sigma[w].add_assign(&add);
                }
            }
        }
        for &v in self.order.iter().rev() {
            let next = self.dist[v] + 1;
            let mut acc = 0.0;
            for &w in g.successors(v) {
                if self.dist[w] == next {
                    acc += self.sigma[v].ratio(&self.sigma[w]) * (1.0 + self.delta[w]);
                }
            }
            self.delta[v] = acc;
            if v != s {
                scores[v] += acc;
            }
        }
    }
}

/// Partial betweenness from the sources in `sources`; sums of partials over
/// a partition of `0..n` give the full vector.
pub fn betweenness_composite_partial<C: SigmaCounter>(
    g: &CompositeDigraph,
    sources: Range<usize>,
) -> Vec<f64> {
    let n = g.vertex_count();
    let mut scores = vec![0.0; n];
    let mut ws = Workspace::<C>::new(n);
    for s in sources {
        ws.run(g, s, &mut scores);
    }
    scores
}

/// Brandes betweenness with path counts of type `C`.
pub fn betweenness_composite_with<C: SigmaCounter>(g: &CompositeDigraph) -> Vec<f64> {
    betweenness_composite_partial::<C>(g, 0..g.vertex_count())
}

/// Brandes betweenness with exact path counts. `O(nm)` time.
pub fn betweenness_composite(g: &CompositeDigraph) -> Vec<f64> {
    betweenness_composite_with::<PathCount>(g)
}
