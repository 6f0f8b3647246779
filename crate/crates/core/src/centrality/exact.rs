use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::SsspState;
use crate::count::SigmaCounter;
use crate::digraph::CompositeDigraph;
use crate::subdet::SubDetMatrix;

const UNSEEN: usize = usize::MAX;

/// Fewest-class-transition search from one source class.
///
/// The level of a composite vertex is the least number of inter-class arcs
/// on a walk from the source class to it. A counted path is a sequence of
/// inter-class arcs, each step shortest, joined by intra-class walks that stay
/// on one level. Counting runs on a layered DAG with two nodes per composite
/// vertex: an *entry* node reached by an inter-class arc and an *at* node
/// reached from an entry of the same class and level by intra-class arcs.
#[derive(Debug, Clone)]
pub struct ExactSearch<C> {
    source: usize,
    level: Vec<usize>,
    by_level: Vec<usize>,
    level_ptr: Vec<usize>,
    sigma_at: Vec<C>,
    sigma_in: Vec<C>,
    entries: Vec<usize>,
    entry_ptr: Vec<usize>,
    reach: Vec<usize>,
    reach_ptr: Vec<usize>,
    /// Fewest class transitions from the source class; the source itself is 0.
    pub class_dist: Vec<Option<usize>>,
    /// Number of shortest transition sequences ending in each class.
    pub class_sigma: Vec<C>,
}

impl<C: SigmaCounter> ExactSearch<C> {
    pub(crate) fn run(g: &CompositeDigraph, classes: &SubDetMatrix, s: usize) -> Self {
        let n = g.vertex_count();
        let nz = classes.rows();
        let class = |v: usize| classes.class_of(v);

        // 0-1 BFS: intra-class arcs cost 0
        let mut level = vec![UNSEEN; n];
        let mut deque = VecDeque::new();
        for &i in classes.members(s) {
            level[i] = 0;
            deque.push_back(i);
        }
        while let Some(v) = deque.pop_front() {
            for &w in g.successors(v) {
                let cost = usize::from(class(w) != class(v));
                if level[v] + cost < level[w] {
                    level[w] = level[v] + cost;
                    if cost == 0 {
                        deque.push_front(w);
                    } else {
                        deque.push_back(w);
                    }
                }
            }
        }

        let top = level.iter().filter(|&&l| l != UNSEEN).max().copied().unwrap_or(0);
        let mut level_ptr = vec![0usize; top + 2];
        for &l in level.iter().filter(|&&l| l != UNSEEN) {
            level_ptr[l + 1] += 1;
        }
        for k in 0..=top {
            level_ptr[k + 1] += level_ptr[k];
        }
        let mut fill = level_ptr.clone();
        let mut by_level = vec![0usize; level_ptr[top + 1]];
        for (v, &l) in level.iter().enumerate() {
            if l != UNSEEN {
                by_level[fill[l]] = v;
                fill[l] += 1;
            }
        }

        let mut sigma_at = vec![C::zero(); n];
        let mut sigma_in = vec![C::zero(); n];
        let mut is_entry = vec![false; n];
        let mut entries = Vec::new();
        let mut entry_ptr = vec![0usize, 0];
        let mut reach = Vec::new();
        let mut reach_ptr = vec![0usize];
        let mut stamp = vec![UNSEEN; n];
        let mut stack = Vec::new();
        for &x in &by_level[level_ptr[0]..level_ptr[1]] {
            sigma_at[x] = C::one();
        }
        for k in 1..=top {
            let first = entries.len();
            for &y in &by_level[level_ptr[k - 1]..level_ptr[k]] {
                for &w in g.successors(y) {
                    if level[w] == k && class(w) != class(y) {
                        if !is_entry[w] {
                            is_entry[w] = true;
                            entries.push(w);
                        }
                        let add = sigma_at[y].clone();
                        sigma_in[w].add_assign(&add);
                    }
                }
            }
            for e in first..entries.len() {
                let w = entries[e];
                let cw = class(w);
                stamp[w] = e;
                stack.push(w);
                while let Some(x) = stack.pop() {
                    reach.push(x);
                    let add = sigma_in[w].clone();
                    sigma_at[x].add_assign(&add);
                    for &z in g.successors(x) {
                        if stamp[z] != e && level[z] == k && class(z) == cw {
                            stamp[z] = e;
                            stack.push(z);
                        }
                    }
                }
                reach_ptr.push(reach.len());
            }
            entry_ptr.push(entries.len());
        }

        let mut class_dist: Vec<Option<usize>> = vec![None; nz];
        for &v in &by_level {
            let c = class(v);
            if class_dist[c].is_none() {
                class_dist[c] = Some(level[v]);
            }
        }
        let mut class_sigma = vec![C::zero(); nz];
        class_sigma[s] = C::one();
        for &w in &entries {
            let c = class(w);
            if class_dist[c] == Some(level[w]) {
                let add = sigma_in[w].clone();
                class_sigma[c].add_assign(&add);
            }
        }

        ExactSearch {
            source: s,
            level,
            by_level,
            level_ptr,
            sigma_at,
            sigma_in,
            entries,
            entry_ptr,
            reach,
            reach_ptr,
            class_dist,
            class_sigma,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    /// Level of composite vertex `v`, `None` when unreachable.
    pub fn level(&self, v: usize) -> Option<usize> {
        Some(self.level[v]).filter(|&l| l != UNSEEN)
    }

    /// Class-level summary: distances, counts, the distinct classes that
    /// precede each class on its shortest paths, and classes by distance.
    pub fn to_state(&self, g: &CompositeDigraph, classes: &SubDetMatrix) -> SsspState<C> {
        let nz = classes.rows();
        let mut preds = vec![Vec::new(); nz];
        for k in 1..self.level_ptr.len() - 1 {
            for &y in &self.by_level[self.level_ptr[k - 1]..self.level_ptr[k]] {
                for &w in g.successors(y) {
                    let c = classes.class_of(w);
                    if self.level[w] == k && c != classes.class_of(y) && self.class_dist[c] == Some(k) {
                        preds[c].push(classes.class_of(y));
                    }
                }
            }
        }
        for p in &mut preds {
            p.sort_unstable();
            p.dedup();
        }
        let mut order: Vec<usize> = (0..nz).filter(|&c| self.class_dist[c].is_some()).collect();
        order.sort_by_key(|&c| self.class_dist[c]);
        SsspState {
            dist: self.class_dist.clone(),
            sigma: self.class_sigma.clone(),
            preds,
            order,
        }
    }

    /// The inter-class arc sequences counted in `class_sigma[target]`, each
    /// as `(tail, head)` composite arcs in path order. Exponential in general;
    /// meant for verification on small instances.
    pub fn counted_paths(
        &self,
        g: &CompositeDigraph,
        classes: &SubDetMatrix,
        target: usize,
    ) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let Some(k) = self.class_dist[target] else { return out };
        if k == 0 {
            return out;
        }
        // entries of each level whose intra-class reach contains a vertex
        let mut reached_by = vec![Vec::new(); g.vertex_count()];
        for level in 1..self.entry_ptr.len() - 1 {
            for e in self.entry_ptr[level]..self.entry_ptr[level + 1] {
                for &x in &self.reach[self.reach_ptr[e]..self.reach_ptr[e + 1]] {
                    reached_by[x].push(self.entries[e]);
                }
            }
        }
        let mut suffix = Vec::new();
        for e in self.entry_ptr[k]..self.entry_ptr[k + 1] {
            let w = self.entries[e];
            if classes.class_of(w) == target {
                self.extend_back(g, classes, &reached_by, w, &mut suffix, &mut out);
            }
        }
        out
    }

    fn extend_back(
        &self,
        g: &CompositeDigraph,
        classes: &SubDetMatrix,
        reached_by: &[Vec<usize>],
        w: usize,
        suffix: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let k = self.level[w];
        for &y in &self.by_level[self.level_ptr[k - 1]..self.level_ptr[k]] {
            if classes.class_of(y) == classes.class_of(w) || !g.has_arc(y, w) {
                continue;
            }
            suffix.push((y, w));
            if k == 1 {
                out.push(suffix.iter().rev().copied().collect());
            } else {
                for &e in &reached_by[y] {
                    self.extend_back(g, classes, reached_by, e, suffix, out);
                }
            }
            suffix.pop();
        }
    }

    /// Adds this source's dependencies to `scores` (indexed by class).
    pub(crate) fn accumulate(&self, g: &CompositeDigraph, classes: &SubDetMatrix, scores: &mut [f64]) {
        let n = g.vertex_count();
        let class = |v: usize| classes.class_of(v);
        let mut delta_at = vec![0.0f64; n];
        let mut delta_in = vec![0.0f64; n];
        let top = self.level_ptr.len() - 2;
        for k in (0..=top).rev() {
            for &x in &self.by_level[self.level_ptr[k]..self.level_ptr[k + 1]] {
                let mut acc = 0.0;
                for &w in g.successors(x) {
                    let cw = class(w);
                    if self.level[w] == k + 1 && cw != class(x) {
                        let terminal = if self.class_dist[cw] == Some(k + 1) {
                            self.sigma_in[w].ratio(&self.class_sigma[cw])
                        } else {
                            0.0
                        };
                        acc += self.sigma_at[x].ratio(&self.sigma_in[w]) * (terminal + delta_in[w]);
                    }
                }
                delta_at[x] = acc;
            }
            if k == 0 {
                break;
            }
            for e in self.entry_ptr[k]..self.entry_ptr[k + 1] {
                let w = self.entries[e];
                let acc: f64 = self.reach[self.reach_ptr[e]..self.reach_ptr[e + 1]]
                    .iter()
                    .map(|&x| self.sigma_in[w].ratio(&self.sigma_at[x]) * delta_at[x])
                    .sum();
                delta_in[w] = acc;
                scores[class(w)] += acc;
            }
        }
    }
}
