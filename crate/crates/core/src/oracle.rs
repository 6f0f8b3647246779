//! Algebraic reachability oracle.
//!
//! A breadth-first search is the nonzero pattern of the series
//! `B = Σₖ Jᵏ`. Scaling `J` by `0 < ρ_H < 1/ρ(J)` makes the series converge to
//! `(I − ρ_H J)⁻¹`. Sub-determining before summing (`Σₖ (M J Mᵀ)ᵏ`) admits
//! spurious paths; summing first and sub-determining afterwards
//! (`M (Σₖ Jᵏ) Mᵀ`) does not. Both orders are computed here, in real
//! arithmetic and in the boolean semiring, so the traversal code in
//! [`crate::centrality`] can be checked against them.

use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::CompositeDigraph;
use crate::error::{MagError, Result};
use crate::mag::MagGraph;
use crate::sparse::{Semiring, SparseMatrix};
use crate::subdet::{build_subdet_matrix, SubDetMatrix, SubDetSpec};

/// Accumulated entries at or below this value count as zero.
pub const POSITIVE_THRESHOLD: f64 = 1e-12;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERS: usize = 10_000;
/// Largest dimension accepted by [`reachability_closure_dense`].
pub const DENSE_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Arithmetic {
    /// OR/AND products; exact patterns.
    #[default]
    Boolean,
    /// Scaled real series, thresholded at [`POSITIVE_THRESHOLD`].
    Real,
}

/// `J[i, j] = 1` iff the arc `i → j` exists.
pub fn adjacency_matrix<T: Semiring>(g: &CompositeDigraph) -> SparseMatrix<T> {
    let n = g.vertex_count();
    SparseMatrix::from_triplets(n, n, g.arcs().map(|(u, v)| (u, v, T::ONE)))
}

fn require_nonnegative(j: &SparseMatrix<f64>) -> Result<()> {
    j.require_square()?;
    if j.entries().any(|(_, _, v)| v < 0.0 || !v.is_finite()) {
        return Err(MagError::InvalidParameter("matrix must be finite and nonnegative"));
    }
    Ok(())
}

fn support_is_acyclic(j: &SparseMatrix<f64>) -> bool {
    let g = CompositeDigraph::from_arcs(j.rows(), j.entries().map(|(r, c, _)| (r, c)));
    g.is_acyclic()
}

/// Collatz–Wielandt bounds `(lower, upper)` on `ρ(J)`, from power iteration
/// on the primitive shift `I + J` starting at the all-ones vector.
fn spectral_bounds(j: &SparseMatrix<f64>, max_iters: usize, tol: f64) -> (f64, f64) {
    let n = j.rows();
    if n == 0 || support_is_acyclic(j) {
        return (0.0, 0.0);
    }
    let mut x = vec![1.0; n];
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    let mut checkpoint = f64::INFINITY;
    for iter in 0..max_iters.max(1) {
        let jx = j.mul_vec(&x);
        let (mut step_lo, mut step_hi) = (f64::INFINITY, 0.0f64);
        let mut y = Vec::with_capacity(n);
        for (xi, jxi) in x.iter().zip(&jx) {
            let yi = xi + jxi;
            let ratio = yi / xi;
            step_lo = step_lo.min(ratio);
            step_hi = step_hi.max(ratio);
            y.push(yi);
        }
        lo = lo.max(step_lo - 1.0);
        hi = hi.min(step_hi - 1.0);
        if hi - lo <= tol * hi.max(1.0) {
            break;
        }
        // reducible matrices can keep the bounds apart forever; the upper
        // bound alone is still valid, so stop once it has settled
        if iter % 64 == 63 {
            if checkpoint - hi <= tol * hi.max(1.0) {
                break;
            }
            checkpoint = hi;
        }
        let scale = y.iter().fold(0.0f64, |m, v| m.max(*v));
        x = y.into_iter().map(|v| v / scale).collect();
    }
    (lo.max(0.0), hi.max(0.0))
}

/// Estimates the spectral radius of a nonnegative square matrix.
///
/// Acyclic supports are nilpotent and give exactly 0. Otherwise the result is
/// the Collatz–Wielandt upper bound after convergence (or after `max_iters`),
/// so it never underestimates.
pub fn spectral_radius_estimate(j: &SparseMatrix<f64>, max_iters: usize, tol: f64) -> Result<f64> {
    require_nonnegative(j)?;
    Ok(spectral_bounds(j, max_iters, tol).1)
}

/// `ρ_H = 1 / (1 + ρ̂·(1 + tol))`, strictly inside `(0, 1/ρ(J))`.
pub fn scaling_factor(j: &SparseMatrix<f64>) -> Result<f64> {
    let rho = spectral_radius_estimate(j, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE)?;
    Ok(1.0 / (1.0 + rho * (1.0 + DEFAULT_TOLERANCE)))
}

/// `J_ρ = ρ_H J` with spectral radius strictly below one.
pub fn scale_adjacency(j: &SparseMatrix<f64>) -> Result<SparseMatrix<f64>> {
    let factor = scaling_factor(j)?;
    Ok(j.scale(factor))
}

fn check_convergent(jr: &SparseMatrix<f64>) -> Result<()> {
    require_nonnegative(jr)?;
    let (lo, hi) = spectral_bounds(jr, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE);
    if lo >= 1.0 || (hi >= 1.0 && hi - lo <= DEFAULT_TOLERANCE * hi) {
        return Err(MagError::Divergence {
            spectral_radius: hi,
        });
    }
    Ok(())
}

/// `Σ_{k=0}^{K} Jrᵏ` with `K = n`, stopping early once a power vanishes.
///
/// Requires `ρ(Jr) < 1`; a violated precondition is reported as
/// [`MagError::Divergence`].
pub fn reachability_closure(jr: &SparseMatrix<f64>) -> Result<SparseMatrix<f64>> {
    check_convergent(jr)?;
    truncated_series(jr)
}

fn truncated_series(jr: &SparseMatrix<f64>) -> Result<SparseMatrix<f64>> {
    let n = jr.rows();
    let mut sum = SparseMatrix::identity(n);
    let mut term = SparseMatrix::identity(n);
    for _ in 0..n {
        term = term.matmul(jr)?;
        if term.is_zero_matrix() {
            break;
        }
        if !term.all_finite() {
            return Err(MagError::Divergence {
                spectral_radius: f64::INFINITY,
            });
        }
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// `(I − Jr)⁻¹` by Gauss–Jordan elimination, for `n ≤ DENSE_LIMIT`.
/// Entries at or below [`POSITIVE_THRESHOLD`] in magnitude are dropped.
pub fn reachability_closure_dense(jr: &SparseMatrix<f64>) -> Result<SparseMatrix<f64>> {
    check_convergent(jr)?;
    let n = jr.rows();
    if n > DENSE_LIMIT {
        return Err(MagError::TooLarge {
            size: n,
            limit: DENSE_LIMIT,
        });
    }
    let mut a = vec![0.0f64; n * n];
    for i in 0..n {
        a[i * n + i] = 1.0;
    }
    for (r, c, v) in jr.entries() {
        a[r * n + c] -= v;
    }
    let mut inv = vec![0.0f64; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x * n + col].abs().total_cmp(&a[y * n + col].abs()))
            .unwrap_or(col);
        if a[pivot * n + col].abs() < 1e-300 {
            return Err(MagError::Divergence {
                spectral_radius: 1.0,
            });
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
                inv.swap(col * n + k, pivot * n + k);
            }
        }
        let p = a[col * n + col];
        for k in 0..n {
            a[col * n + k] /= p;
            inv[col * n + k] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col];
            if f == 0.0 {
                continue;
            }
            for k in 0..n {
                a[r * n + k] -= f * a[col * n + k];
                inv[r * n + k] -= f * inv[col * n + k];
            }
        }
    }
    Ok(SparseMatrix::from_triplets(
        n,
        n,
        inv.into_iter()
            .enumerate()
            .filter(|(_, v)| v.abs() > POSITIVE_THRESHOLD)
            .map(|(k, v)| (k / n, k % n, v)),
    ))
}

/// Reflexive-transitive closure in the boolean semiring, by repeated
/// squaring of `I + J`.
pub fn boolean_closure(j: &SparseMatrix<bool>) -> Result<SparseMatrix<bool>> {
    j.require_square()?;
    let mut c = SparseMatrix::identity(j.rows()).add(j)?;
    loop {
        let next = c.matmul(&c)?;
        if next == c {
            return Ok(c);
        }
        c = next;
    }
}

fn check_dims<T: Semiring>(j: &SparseMatrix<T>, m: &SubDetMatrix) -> Result<()> {
    j.require_square()?;
    if j.rows() != m.cols() {
        return Err(MagError::DimensionMismatch {
            left_rows: m.rows(),
            left_cols: m.cols(),
            right_rows: j.rows(),
            right_cols: j.cols(),
        });
    }
    Ok(())
}

fn sandwich<T: Semiring>(m: &SubDetMatrix, inner: &SparseMatrix<T>) -> Result<SparseMatrix<T>> {
    let ms = m.to_sparse::<T>();
    ms.matmul(inner)?.matmul(&ms.transpose())
}

/// Sub-determination first, then the series: `Σₖ (M Jr Mᵀ)ᵏ`.
///
/// The aggregated matrix keeps its diagonal, so its spectral radius can
/// reach one even when `ρ(Jr) < 1`; it is then rescaled on its own before
/// summing. Only the pattern of the result is meaningful.
pub fn reach_sub_first(jr: &SparseMatrix<f64>, m: &SubDetMatrix) -> Result<SparseMatrix<f64>> {
    check_dims(jr, m)?;
    let mut aggregated = sandwich(m, jr)?;
    let (lo, hi) = spectral_bounds(&aggregated, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE);
    if hi >= 1.0 || lo >= 1.0 {
        aggregated = scale_adjacency(&aggregated)?;
    }
    reachability_closure(&aggregated)
}

/// The series first, then sub-determination: `M (Σₖ Jrᵏ) Mᵀ`.
pub fn reach_bfs_first(jr: &SparseMatrix<f64>, m: &SubDetMatrix) -> Result<SparseMatrix<f64>> {
    check_dims(jr, m)?;
    sandwich(m, &reachability_closure(jr)?)
}

pub fn reach_sub_first_boolean(j: &SparseMatrix<bool>, m: &SubDetMatrix) -> Result<SparseMatrix<bool>> {
    check_dims(j, m)?;
    boolean_closure(&sandwich(m, j)?)
}

pub fn reach_bfs_first_boolean(j: &SparseMatrix<bool>, m: &SubDetMatrix) -> Result<SparseMatrix<bool>> {
    check_dims(j, m)?;
    sandwich(m, &boolean_closure(j)?)
}

/// Off-diagonal reachability between classes under both orders of operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityComparison {
    pub classes: usize,
    /// Pairs reachable after aggregating first (spurious paths included).
    pub sub_first: Vec<(usize, usize)>,
    /// Pairs reachable when the search runs on the full MAG.
    pub bfs_first: Vec<(usize, usize)>,
    /// `sub_first \ bfs_first`: pairs that only spurious paths connect.
    pub spurious: Vec<(usize, usize)>,
    /// `bfs_first \ sub_first`; always empty for a sound implementation.
    pub missing: Vec<(usize, usize)>,
}

pub fn compare_orders(
    mag: &MagGraph,
    zeta: &SubDetSpec,
    arithmetic: Arithmetic,
) -> Result<ReachabilityComparison> {
    let m = build_subdet_matrix(mag.companion(), zeta)?;
    let g = CompositeDigraph::from_mag(mag);
    let (sub_first, bfs_first) = match arithmetic {
        Arithmetic::Boolean => {
            let j = adjacency_matrix::<bool>(&g);
            (
                reach_sub_first_boolean(&j, &m)?.off_diagonal(),
                reach_bfs_first_boolean(&j, &m)?.off_diagonal(),
            )
        }
        Arithmetic::Real => {
            let jr = scale_adjacency(&adjacency_matrix::<f64>(&g))?;
            (
                reach_sub_first(&jr, &m)?
                    .pattern_above(POSITIVE_THRESHOLD)
                    .off_diagonal(),
                reach_bfs_first(&jr, &m)?
                    .pattern_above(POSITIVE_THRESHOLD)
                    .off_diagonal(),
            )
        }
    };
    let spurious = difference(&sub_first, &bfs_first);
    let missing = difference(&bfs_first, &sub_first);
    Ok(ReachabilityComparison {
        classes: m.rows(),
        sub_first,
        bfs_first,
        spurious,
        missing,
    })
}

/// Sorted set difference of two sorted pair lists.
fn difference(a: &[(usize, usize)], b: &[(usize, usize)]) -> Vec<(usize, usize)> {
    a.iter().filter(|x| b.binary_search(x).is_err()).copied().collect()
}
