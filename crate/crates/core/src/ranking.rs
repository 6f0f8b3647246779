//! Rankings and Rank-Biased Overlap.
//!
//! `RBO_ext = (1−p) Σ_{k=1}^{L} p^{k−1} A_k + p^L A_L` with `A_k` the
//! fraction of shared items in the two depth-`k` prefixes, and
//! `RBD = 1 − RBO`. The persistence `p` is chosen so that the first `d`
//! ranks carry a given share of the total weight.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MagError, Result};

/// Scores closer than this (relative to their magnitude, with the same
/// absolute floor) are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Identifiers ordered best first. Ties are broken by ascending identifier;
/// `group[i]` numbers the tie group of position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    items: Vec<usize>,
    group: Vec<usize>,
}

impl Ranking {
    /// Ranking without ties.
    pub fn from_items(items: Vec<usize>) -> Self {
        let group = (0..items.len()).collect();
        Ranking { items, group }
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Tie group of each position, numbered from 0 in rank order.
    pub fn groups(&self) -> &[usize] {
        &self.group
    }

    /// `(start, end)` position span of each tie group.
    pub fn group_spans(&self) -> Vec<(usize, usize)> {
        let mut spans: Vec<(usize, usize)> = Vec::new();
        for (i, &g) in self.group.iter().enumerate() {
            if g == spans.len() {
                spans.push((i, i + 1));
            } else {
                spans[g].1 = i + 1;
            }
        }
        spans
    }
}

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Ranks identifiers `0..scores.len()` by score, highest first, ties by
/// identifier.
pub fn to_ranking(scores: &[f64]) -> Ranking {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    // group runs whose scores stay within tolerance of the run's leader
    let mut group = Vec::with_capacity(order.len());
    let mut start = 0;
    let mut g = 0;
    while start < order.len() {
        let lead = scores[order[start]];
        let mut end = start + 1;
        while end < order.len() && tied(lead, scores[order[end]]) {
            end += 1;
        }
        order[start..end].sort_unstable();
        group.extend(core::iter::repeat_n(g, end - start));
        g += 1;
        start = end;
    }
    Ranking { items: order, group }
}

/// Share of the total RBO weight carried by the first `d` ranks:
/// `1 − p^{d−1} + ((1−p)/p)·d·(ln(1/(1−p)) − Σ_{i=1}^{d−1} pⁱ/i)`.
pub fn prefix_weight(d: usize, p: f64) -> f64 {
    if d == 0 {
        return 0.0;
    }
    let df = d as f64;
    // ln(1/(1−p)) − Σ_{i<d} pⁱ/i = Σ_{i≥d} pⁱ/i; summing the tail directly
    // avoids cancellation for small p
    let tail = if p < 0.5 {
        let mut term = libm::pow(p, df);
        let mut sum = term / df;
        let mut i = df;
        while term > 0.0 && term / i > 1e-18 * sum {
            term *= p;
            i += 1.0;
            sum += term / i;
        }
        sum
    } else {
        let mut head = 0.0;
        let mut pi = 1.0;
        for i in 1..d {
            pi *= p;
            head += pi / i as f64;
        }
        -libm::log1p(-p) - head
    };
    1.0 - libm::pow(p, df - 1.0) + (1.0 - p) / p * df * tail
}

/// Weight of rank `i` (1-based) in infinite RBO: `(1−p) Σ_{k≥i} p^{k−1}/k`.
pub fn rank_weight(i: usize, p: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = libm::pow(p, i as f64 - 1.0);
    let mut k = i as f64;
    while term > 1e-20 {
        sum += term / k;
        term *= p;
        k += 1.0;
    }
    (1.0 - p) * sum
}

/// Persistence `p` with `prefix_weight(depth, p) = weight`, by bisection to
/// `1e-10`.
pub fn solve_persistence(weight: f64, depth: usize) -> Result<f64> {
    if depth == 0 {
        return Err(MagError::InvalidParameter("RBO depth must be at least 1"));
    }
    let no_solution = MagError::NoSolution { weight, depth };
    if !(weight > 0.0 && weight < 1.0) {
        return Err(no_solution);
    }
    // prefix_weight falls from 1 (p → 0) to 0 (p → 1)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let (f_lo, f_hi) = (prefix_weight(depth, 1e-15), prefix_weight(depth, 1.0 - 1e-15));
    if !(f_hi < weight && weight < f_lo) {
        return Err(no_solution);
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if prefix_weight(depth, mid) > weight {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Evaluation depth for a fraction of the ranking: `round(fraction·len)`,
/// at least 1.
pub fn depth_for_fraction(fraction: f64, len: usize) -> usize {
    (libm::round(fraction * len as f64) as usize).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieMode {
    /// Use the identifier tie-break as if it were a real order.
    #[default]
    Identifier,
    /// A tie group cut by a prefix boundary contributes each of its members
    /// fractionally (positions inside the prefix over group size).
    AverageOverlap,
}

impl core::str::FromStr for TieMode {
    type Err = MagError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identifier" | "id" => Ok(TieMode::Identifier),
            "average-overlap" => Ok(TieMode::AverageOverlap),
            _ => Err(MagError::InvalidParameter("ties must be identifier or average-overlap")),
        }
    }
}

impl core::fmt::Display for TieMode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            TieMode::Identifier => "identifier",
            TieMode::AverageOverlap => "average-overlap",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RboOptions {
    pub ties: TieMode,
    /// Compare only the top `k` positions.
    pub truncate: Option<usize>,
}

fn check_universe(a: &Ranking, b: &Ranking) -> Result<usize> {
    let n = a.len();
    if b.len() != n {
        return Err(MagError::UniverseMismatch);
    }
    let mut seen = vec![0u8; n];
    for (&x, &y) in a.items.iter().zip(&b.items) {
        if x >= n || y >= n {
            return Err(MagError::UniverseMismatch);
        }
        seen[x] |= 1;
        seen[y] |= 2;
    }
    if seen.iter().any(|&s| s != 3) {
        return Err(MagError::UniverseMismatch);
    }
    Ok(n)
}

/// Overlaps `X_1 ..= X_len` with fractional tie presence.
fn fractional_overlaps(a: &Ranking, b: &Ranking, len: usize) -> Vec<f64> {
    let n = a.len();
    let presence = |r: &Ranking| {
        let spans = r.group_spans();
        let mut span_of = vec![(0usize, 0usize); n];
        for (pos, &item) in r.items.iter().enumerate() {
            span_of[item] = spans[r.group[pos]];
        }
        span_of
    };
    let (sa, sb) = (presence(a), presence(b));
    let frac = |(s, e): (usize, usize), k: usize| {
        if k <= s {
            0.0
        } else if k >= e {
            1.0
        } else {
            (k - s) as f64 / (e - s) as f64
        }
    };
    (1..=len)
        .map(|k| (0..n).map(|x| frac(sa[x], k).min(frac(sb[x], k))).sum())
        .collect()
}

/// Overlaps `X_1 ..= X_len` of the plain orders.
fn plain_overlaps(a: &Ranking, b: &Ranking, len: usize) -> Vec<f64> {
    let n = a.len();
    let (mut in_a, mut in_b) = (vec![false; n], vec![false; n]);
    let mut x = 0usize;
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let (ia, ib) = (a.items[k], b.items[k]);
        if ia == ib {
            x += 1;
        } else {
            x += usize::from(in_b[ia]) + usize::from(in_a[ib]);
        }
        in_a[ia] = true;
        in_b[ib] = true;
        out.push(x as f64);
    }
    out
}

/// Extrapolated Rank-Biased Overlap of two rankings of one universe.
pub fn rbo(a: &Ranking, b: &Ranking, p: f64, options: RboOptions) -> Result<f64> {
    let n = check_universe(a, b)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(MagError::InvalidParameter("persistence must lie in (0, 1)"));
    }
    let len = options.truncate.map_or(n, |k| k.min(n));
    if len == 0 {
        return Ok(1.0);
    }
    let overlaps = match options.ties {
        TieMode::Identifier => plain_overlaps(a, b, len),
        TieMode::AverageOverlap => fractional_overlaps(a, b, len),
    };
    let mut sum = 0.0;
    let mut weight = 1.0;
    for (k, x) in overlaps.iter().enumerate() {
        sum += weight * x / (k + 1) as f64;
        weight *= p;
    }
    let last = overlaps[len - 1] / len as f64;
    Ok(((1.0 - p) * sum + weight * last).clamp(0.0, 1.0))
}

/// Rank-Biased Distance `1 − RBO`.
pub fn rbd(a: &Ranking, b: &Ranking, p: f64, options: RboOptions) -> Result<f64> {
    Ok(1.0 - rbo(a, b, p, options)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_examples() {
        assert_eq!(to_ranking(&[0.0, 1.0, 0.0]).items(), &[1, 0, 2]);
        let flat = to_ranking(&[2.0; 4]);
        assert_eq!(flat.items(), &[0, 1, 2, 3]);
        assert_eq!(flat.groups(), &[0, 0, 0, 0]);
        let r = to_ranking(&[0.5, 3.0, 0.5, 1.0]);
        assert_eq!(r.items(), &[1, 3, 0, 2]);
        assert_eq!(r.group_spans(), vec![(0, 1), (1, 2), (2, 4)]);
    }

    #[test]
    fn four_item_example() {
        let a = Ranking::from_items(vec![0, 1, 2, 3]);
        let b = Ranking::from_items(vec![1, 0, 2, 3]);
        // X = 0, 2, 3, 4
        let expect = 0.1 * (0.0 + 0.9 + 0.81 + 0.729) + 0.6561;
        let got = rbo(&a, &b, 0.9, RboOptions::default()).unwrap();
        assert!((got - expect).abs() < 1e-15);
        assert!((got - 0.9).abs() < 1e-12);
    }

    #[test]
    fn identity_and_mismatch() {
        let a = Ranking::from_items(vec![2, 0, 1]);
        assert_eq!(rbd(&a, &a, 0.7, RboOptions::default()).unwrap(), 0.0);
        let b = Ranking::from_items(vec![0, 1]);
        assert_eq!(rbo(&a, &b, 0.7, RboOptions::default()), Err(MagError::UniverseMismatch));
        let c = Ranking::from_items(vec![0, 1, 1]);
        assert_eq!(rbo(&a, &c, 0.7, RboOptions::default()), Err(MagError::UniverseMismatch));
    }

    #[test]
    fn ties_as_sets() {
        let a = to_ranking(&[1.0, 1.0, 0.0]);
        let b = Ranking::from_items(vec![1, 0, 2]);
        let opts = RboOptions {
            ties: TieMode::AverageOverlap,
            truncate: None,
        };
        assert_eq!(rbo(&a, &b, 0.5, opts).unwrap(), rbo(&b, &a, 0.5, opts).unwrap());
        assert!(rbo(&a, &b, 0.5, opts).unwrap() > rbo(&a, &b, 0.5, RboOptions::default()).unwrap());
        assert_eq!(rbo(&a, &a, 0.5, opts).unwrap(), 1.0);
    }

    #[test]
    fn prefix_weight_matches_rank_weights() {
        for &p in &[0.05, 0.3, 0.5, 0.7, 0.9, 0.98] {
            let mut cumulative = 0.0;
            for d in 1..=40 {
                cumulative += rank_weight(d, p);
                assert!(
                    (prefix_weight(d, p) - cumulative).abs() < 1e-9,
                    "p={p} d={d}: {} vs {}",
                    prefix_weight(d, p),
                    cumulative
                );
            }
        }
    }

    #[test]
    fn persistence_solves_weight() {
        for d in [1, 2, 5, 11, 100] {
            let p = solve_persistence(0.85, d).unwrap();
            assert!((prefix_weight(d, p) - 0.85).abs() < 1e-8);
        }
        assert!(solve_persistence(0.999, 11).unwrap() < solve_persistence(0.9, 11).unwrap());
        assert!(matches!(solve_persistence(1.0, 11), Err(MagError::NoSolution { .. })));
        assert!(matches!(solve_persistence(0.0, 11), Err(MagError::NoSolution { .. })));
    }

    #[test]
    fn depth_rounding() {
        assert_eq!(depth_for_fraction(0.1, 110), 11);
        assert_eq!(depth_for_fraction(0.1, 1000), 100);
        assert_eq!(depth_for_fraction(0.1, 3), 1);
    }
}
