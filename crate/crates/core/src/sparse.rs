//! Row-compressed sparse matrices over a small semiring abstraction.
//!
//! `f64` gives the real arithmetic of the algebraic formulation; `bool`
//! (OR as addition, AND as multiplication) gives exact reachability patterns.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MagError, Result};

pub trait Semiring: Copy + PartialEq + core::fmt::Debug {
    const ZERO: Self;
    const ONE: Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl Semiring for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
}

impl Semiring for bool {
    const ZERO: Self = false;
    const ONE: Self = true;
    fn add(self, other: Self) -> Self {
        self | other
    }
    fn mul(self, other: Self) -> Self {
        self & other
    }
}

/// CSR matrix. Explicit zeros are never stored; column indices within a row
/// are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T = f64> {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Semiring> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![T::ONE; n],
        }
    }

    /// Builds from `(row, col, value)` triplets, adding repeated positions.
    ///
    /// # Panics
    ///
    /// If a triplet lies outside `rows x cols`.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut t: Vec<(usize, usize, T)> = triplets.into_iter().collect();
        for &(r, c, _) in &t {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
        }
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx: Vec<usize> = Vec::with_capacity(t.len());
        let mut values: Vec<T> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        let mut row_of: Vec<usize> = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            if last == Some((r, c)) {
                let slot = values.last_mut().expect("previous entry exists");
                *slot = slot.add(v);
            } else {
                col_idx.push(c);
                values.push(v);
                row_of.push(r);
                last = Some((r, c));
            }
        }
        let mut keep_cols = Vec::with_capacity(col_idx.len());
        let mut keep_vals = Vec::with_capacity(values.len());
        for ((c, v), r) in col_idx.into_iter().zip(values).zip(row_of) {
            if !v.is_zero() {
                keep_cols.push(c);
                keep_vals.push(v);
                row_ptr[r + 1] += 1;
            }
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        SparseMatrix {
            rows,
            cols,
            row_ptr,
            col_idx: keep_cols,
            values: keep_vals,
        }
    }

    /// Builds from a row-major dense array.
    pub fn from_dense(rows: usize, cols: usize, data: &[T]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self::from_triplets(
            rows,
            cols,
            data.iter()
                .enumerate()
                .map(|(k, &v)| (k / cols, k % cols, v)),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.col_idx[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => T::ZERO,
        }
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<T> {
        let mut out = vec![T::ZERO; self.rows * self.cols];
        for (r, c, v) in self.entries() {
            out[r * self.cols + c] = v;
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.values.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.entries().map(|(r, c, v)| (c, r, v)))
    }

    pub fn map<U: Semiring>(&self, f: impl Fn(T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries().map(|(r, c, v)| (r, c, f(v))),
        )
    }

    /// Sparse product with a dense accumulator per row.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch(other));
        }
        let mut acc = vec![T::ZERO; other.cols];
        let mut touched = vec![false; other.cols];
        let mut used: Vec<usize> = Vec::new();
        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    if !touched[c] {
                        touched[c] = true;
                        used.push(c);
                    }
                    acc[c] = acc[c].add(a.mul(b));
                }
            }
            used.sort_unstable();
            for &c in &used {
                if !acc[c].is_zero() {
                    col_idx.push(c);
                    values.push(acc[c]);
                }
                acc[c] = T::ZERO;
                touched[c] = false;
            }
            used.clear();
            row_ptr.push(col_idx.len());
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(other));
        }
        Ok(Self::from_triplets(
            self.rows,
            self.cols,
            self.entries().chain(other.entries()),
        ))
    }

    /// Positions of the stored entries as a boolean matrix.
    pub fn pattern(&self) -> SparseMatrix<bool> {
        self.map(|v| !v.is_zero())
    }

    /// Sorted `(row, col)` positions of stored entries off the main diagonal.
    pub fn off_diagonal(&self) -> Vec<(usize, usize)> {
        self.entries()
            .filter(|&(r, c, _)| r != c)
            .map(|(r, c, _)| (r, c))
            .collect()
    }

    pub(crate) fn mismatch(&self, other: &Self) -> MagError {
        MagError::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MagError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl SparseMatrix<f64> {
    pub fn scale(&self, factor: f64) -> Self {
        self.map(|v| v * factor)
    }

    /// Pattern of entries strictly greater than `threshold`.
    pub fn pattern_above(&self, threshold: f64) -> SparseMatrix<bool> {
        self.map(|v| v > threshold)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| self.row(r).map(|(c, v)| v * x[c]).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(2, 2, [(0, 1, 1.0), (0, 1, 2.0), (1, 0, 0.0)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 0.0);
    }

    #[test]
    fn product_matches_dense() {
        let a = SparseMatrix::from_dense(2, 3, &[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]);
        let b = SparseMatrix::from_dense(3, 2, &[0.0, 1.0, 4.0, 0.0, 5.0, 6.0]);
        let c = a.matmul(&b).unwrap();
        assert_eq!(c.to_dense(), vec![10.0, 13.0, 12.0, 0.0]);
        assert!(matches!(a.matmul(&a), Err(MagError::DimensionMismatch { .. })));
    }

    #[test]
    fn boolean_semiring() {
        let a = SparseMatrix::from_dense(2, 2, &[false, true, true, false]);
        let sq = a.matmul(&a).unwrap();
        assert_eq!(sq, SparseMatrix::<bool>::identity(2));
        assert_eq!(a.add(&sq).unwrap().nnz(), 4);
    }

    #[test]
    fn transpose_round_trip() {
        let a = SparseMatrix::from_dense(2, 3, &[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 0), 2.0);
    }
}
