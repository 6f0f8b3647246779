use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::CompositeDigraph;
use crate::error::{MagError, Result};

/// Largest graph accepted by [`betweenness_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 14;

/// Betweenness by listing every shortest path of every ordered pair.
///
/// Paths are enumerated depth-first along arcs that stay on some shortest
/// `s → t` path; each interior vertex receives `σ(s,t/v) / σ(s,t)`.
pub fn betweenness_bruteforce(g: &CompositeDigraph) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if n > BRUTEFORCE_LIMIT {
        return Err(MagError::TooLarge {
            size: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let rev = g.reversed();
    let mut scores = vec![0.0; n];
    let mut through = vec![0u64; n];
    let mut path = Vec::new();
    for s in 0..n {
        let from_s = g.bfs_distances(s);
        for t in 0..n {
            if t == s {
                continue;
            }
            let Some(len) = from_s[t] else { continue };
            let to_t = rev.bfs_distances(t);
            through.iter_mut().for_each(|c| *c = 0);
            path.clear();
            path.push(s);
            let total = walk(g, &from_s, &to_t, len, t, &mut path, &mut through);
            for v in 0..n {
                if v != s && v != t && through[v] > 0 {
                    scores[v] += through[v] as f64 / total as f64;
                }
            }
        }
    }
    Ok(scores)
}

fn walk(
    g: &CompositeDigraph,
    from_s: &[Option<usize>],
    to_t: &[Option<usize>],
    len: usize,
    t: usize,
    path: &mut Vec<usize>,
    through: &mut [u64],
) -> u64 {
    let v = *path.last().expect("path starts at the source");
    if v == t {
        for &u in path.iter() {
            through[u] += 1;
        }
        return 1;
    }
    let mut found = 0;
    for &w in g.successors(v) {
        let on_shortest = from_s[w] == Some(path.len()) && to_t[w] == Some(len - path.len());
        if on_shortest {
            path.push(w);
            found += walk(g, from_s, to_t, len, t, path, through);
            path.pop();
        }
    }
    found
}
