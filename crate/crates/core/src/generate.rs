//! Seeded `G(n, m)` random MAGs.
//!
//! Exactly `m` distinct non-loop composite arcs are drawn uniformly without
//! replacement by Floyd's algorithm over the `n(n−1)` ordered pairs. The
//! generator is ChaCha8 seeded from the 64-bit seed, so the same parameters and seed give
//! the same MAG on every platform.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MagError, Result};
use crate::mag::{Aspect, CompanionTuple, DuplicatePolicy, MagGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub aspect_sizes: Vec<usize>,
    /// Number of directed arcs, both directions counted in reciprocal mode.
    pub edge_count: usize,
    pub seed: u64,
    /// Draw `m/2` unordered pairs and add both directions of each.
    pub reciprocal: bool,
}

impl GenSpec {
    pub fn new(aspect_sizes: Vec<usize>, edge_count: usize, seed: u64) -> Self {
        GenSpec {
            aspect_sizes,
            edge_count,
            seed,
            reciprocal: false,
        }
    }

    pub fn reciprocal(mut self, on: bool) -> Self {
        self.reciprocal = on;
        self
    }

    /// `n(n−1)`, the number of non-loop ordered pairs.
    pub fn capacity(&self) -> Result<usize> {
        let n = CompanionTuple::new(self.aspect_sizes.clone())?.vertex_count();
        n.checked_mul(n.saturating_sub(1)).ok_or(MagError::TooLarge {
            size: n,
            limit: usize::MAX,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let capacity = self.capacity()?;
        if self.edge_count > capacity {
            return Err(MagError::TooManyEdges {
                requested: self.edge_count,
                capacity,
            });
        }
        if self.reciprocal && self.edge_count % 2 == 1 {
            return Err(MagError::InvalidParameter(
                "reciprocal generation needs an even arc count",
            ));
        }
        Ok(())
    }
}

/// SplitMix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of instance `index` of an ensemble: `mix64(mix64(seed) ^ index)`.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed) ^ index)
}

/// `m` distinct values from `0..universe`, ascending.
pub fn sample_distinct<R: Rng>(rng: &mut R, universe: usize, m: usize) -> Vec<usize> {
    assert!(m <= universe);
    let mut chosen = BTreeSet::new();
    for j in universe - m..universe {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

/// Ordered pair `r` of `0..n(n−1)`: row `u = r / (n−1)`, skipping the loop.
fn ordered_pair(r: usize, n: usize) -> (usize, usize) {
    let (u, v) = (r / (n - 1), r % (n - 1));
    (u, v + usize::from(v >= u))
}

/// Unordered pair `r` of `0..n(n−1)/2` as `(u, v)` with `u < v`, row-major.
fn unordered_pair(r: usize, n: usize) -> (usize, usize) {
    // first index of row u
    let start = |u: usize| u * (2 * n - u - 1) / 2;
    let (mut lo, mut hi) = (0usize, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if start(mid) <= r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, lo + 1 + (r - start(lo)))
}

/// Composite arcs of a random MAG, sorted.
pub fn random_arcs(spec: &GenSpec) -> Result<Vec<(usize, usize)>> {
    spec.validate()?;
    let n = CompanionTuple::new(spec.aspect_sizes.clone())?.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut arcs: Vec<(usize, usize)> = if spec.reciprocal {
        sample_distinct(&mut rng, n * (n - 1) / 2, spec.edge_count / 2)
            .into_iter()
            .flat_map(|r| {
                let (u, v) = unordered_pair(r, n);
                [(u, v), (v, u)]
            })
            .collect()
    } else if spec.edge_count == 0 {
        Vec::new()
    } else {
        sample_distinct(&mut rng, n * (n - 1), spec.edge_count)
            .into_iter()
            .map(|r| ordered_pair(r, n))
            .collect()
    };
    arcs.sort_unstable();
    Ok(arcs)
}

/// Random MAG with aspects `a1, a2, ...` labelled `1..τ_i`.
pub fn random_mag(spec: &GenSpec) -> Result<MagGraph> {
    let arcs = random_arcs(spec)?;
    let aspects = spec
        .aspect_sizes
        .iter()
        .enumerate()
        .map(|(i, &size)| Aspect::indexed(format!("a{}", i + 1), size))
        .collect();
    MagGraph::from_composite_arcs(aspects, arcs, DuplicatePolicy::Reject)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn pair_decoders_cover_everything() {
        let n = 5;
        let ordered: Vec<_> = (0..n * (n - 1)).map(|r| ordered_pair(r, n)).collect();
        let mut expect = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    expect.push((u, v));
                }
            }
        }
        assert_eq!(ordered, expect);
        let unordered: Vec<_> = (0..n * (n - 1) / 2).map(|r| unordered_pair(r, n)).collect();
        let expect: Vec<_> = expect.into_iter().filter(|(u, v)| u < v).collect();
        assert_eq!(unordered, expect);
    }

    #[test]
    fn capacity_is_enforced() {
        let spec = GenSpec::new(vec![2, 2], 13, 1);
        assert_eq!(
            random_mag(&spec).unwrap_err(),
            MagError::TooManyEdges {
                requested: 13,
                capacity: 12
            }
        );
        let full = random_mag(&GenSpec::new(vec![2, 2], 12, 1)).unwrap();
        assert_eq!(full.edge_count(), 12);
    }

    #[test]
    fn reciprocal_needs_even_count() {
        assert!(random_arcs(&GenSpec::new(vec![4], 3, 0).reciprocal(true)).is_err());
        let arcs = random_arcs(&GenSpec::new(vec![4], 6, 0).reciprocal(true)).unwrap();
        for &(u, v) in &arcs {
            assert!(arcs.binary_search(&(v, u)).is_ok());
        }
    }

    #[test]
    fn seeds_differ_per_instance() {
        assert_ne!(child_seed(7, 0), child_seed(7, 1));
        assert_ne!(child_seed(7, 0), child_seed(8, 0));
        assert_eq!(child_seed(7, 3), child_seed(7, 3));
    }
}
