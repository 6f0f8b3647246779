use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::SsspState;
use crate::digraph::CompositeDigraph;
use crate::subdet::SubDetMatrix;

/// Every distinct source-to-`target` path in the predecessor graph of
/// `state`, source first. Repeated predecessor entries yield one path.
/// The count can be exponential; meant for small instances.
pub fn predecessor_paths<C>(state: &SsspState<C>, target: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if state.dist[target].is_none() {
        return out;
    }
    let mut stack = vec![target];
    collect(state, &mut stack, &mut out);
    out
}

fn collect<C>(state: &SsspState<C>, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let w = *stack.last().expect("non-empty");
    if state.dist[w] == Some(0) {
        out.push(stack.iter().rev().copied().collect());
        return;
    }
    let mut preds = state.preds[w].clone();
    preds.sort_unstable();
    preds.dedup();
    for v in preds {
        stack.push(v);
        collect(state, stack, out);
        stack.pop();
    }
}

/// A composite walk in `g` whose class sequence, with repeats collapsed, is
/// `class_path`; `None` if no such walk exists.
pub fn realize_class_path(
    g: &CompositeDigraph,
    classes: &SubDetMatrix,
    class_path: &[usize],
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let k = class_path.len();
    if k == 0 {
        return None;
    }
    // state (step, vertex), step = index into class_path
    let id = |step: usize, v: usize| step * n + v;
    let mut parent: Vec<Option<usize>> = vec![None; n * k];
    let mut seen = vec![false; n * k];
    let mut queue = VecDeque::new();
    for &v in classes.members(class_path[0]) {
        seen[id(0, v)] = true;
        queue.push_back((0usize, v));
    }
    while let Some((step, v)) = queue.pop_front() {
        if step + 1 == k {
            let mut walk = vec![v];
            let mut cur = id(step, v);
            while let Some(p) = parent[cur] {
                walk.push(p % n);
                cur = p;
            }
            walk.reverse();
            return Some(walk);
        }
        for &w in g.successors(v) {
            let cw = classes.class_of(w);
            let next = if cw == class_path[step] {
                step
            } else if cw == class_path[step + 1] {
                step + 1
            } else {
                continue;
            };
            if !seen[id(next, w)] {
                seen[id(next, w)] = true;
                parent[id(next, w)] = Some(id(step, v));
                queue.push_back((next, w));
            }
        }
    }
    None
}
