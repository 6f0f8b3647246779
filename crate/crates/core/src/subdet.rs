//! Sub-determination: projecting a MAG onto a proper, non-empty subset of its
//! aspects. Composite vertices that agree on every retained aspect fall into
//! the same class (a sub-determined vertex).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::digraph::CompositeDigraph;
use crate::error::{MagError, Result};
use crate::mag::{Aspect, CompanionTuple, CompositeVertex, DuplicatePolicy, MagGraph};
use crate::sparse::{Semiring, SparseMatrix};

/// Indicator tuple ζ: `true` keeps the aspect.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubDetSpec {
    keep: Vec<bool>,
}

impl SubDetSpec {
    pub fn new(keep: Vec<bool>) -> Result<Self> {
        if !keep.iter().any(|&k| k) || keep.iter().all(|&k| k) {
            return Err(MagError::ImproperSpec);
        }
        Ok(SubDetSpec { keep })
    }

    /// From a 0/1 tuple such as `[1, 0, 0]`.
    pub fn from_tuple(tuple: &[u8]) -> Result<Self> {
        let mut keep = Vec::with_capacity(tuple.len());
        for &t in tuple {
            match t {
                0 => keep.push(false),
                1 => keep.push(true),
                _ => return Err(MagError::InvalidParameter("sub-determination entries must be 0 or 1")),
            }
        }
        Self::new(keep)
    }

    /// From the integer form `1 ≤ ζ ≤ 2^p − 2`; bit 0 is the first aspect.
    pub fn from_integer(zeta: u64, order: usize) -> Result<Self> {
        if order == 0 || order > 63 {
            return Err(MagError::InvalidParameter("order must be between 1 and 63"));
        }
        if zeta >= 1u64 << order {
            return Err(MagError::ImproperSpec);
        }
        Self::new((0..order).map(|i| zeta >> i & 1 == 1).collect())
    }

    /// Keeps exactly one aspect.
    pub fn single_aspect(aspect: usize, order: usize) -> Result<Self> {
        if aspect >= order {
            return Err(MagError::OutOfRange {
                index: aspect,
                limit: order,
            });
        }
        Self::new((0..order).map(|i| i == aspect).collect())
    }

    pub fn order(&self) -> usize {
        self.keep.len()
    }

    pub fn keeps(&self, aspect: usize) -> bool {
        self.keep.get(aspect).copied().unwrap_or(false)
    }

    pub fn indicator(&self) -> &[bool] {
        &self.keep
    }

    pub fn to_integer(&self) -> u64 {
        self.keep
            .iter()
            .enumerate()
            .filter(|(_, &k)| k)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Positions of the retained aspects, in aspect order.
    pub fn retained(&self) -> impl Iterator<Item = usize> + '_ {
        self.keep.iter().enumerate().filter(|(_, &k)| k).map(|(i, _)| i)
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if self.keep.len() != order {
            return Err(MagError::SpecArityMismatch {
                expected: order,
                found: self.keep.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SubDetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &k) in self.keep.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if k { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for SubDetSpec {
    type Err = MagError;

    /// Parses the comma-separated form `1,0,0`.
    fn from_str(s: &str) -> Result<Self> {
        let mut tuple = Vec::new();
        for part in s.split(',') {
            match part.trim() {
                "0" => tuple.push(0),
                "1" => tuple.push(1),
                _ => return Err(MagError::InvalidParameter("sub-determination must look like 1,0,0")),
            }
        }
        Self::from_tuple(&tuple)
    }
}

/// `τ_ζ`: the cardinalities of the retained aspects, in aspect order.
pub fn sub_companion_tuple(tau: &CompanionTuple, zeta: &SubDetSpec) -> Result<CompanionTuple> {
    zeta.check_order(tau.order())?;
    CompanionTuple::new(zeta.retained().map(|i| tau.sizes()[i]).collect())
}

/// `S_ζ`: keeps the retained entries of a composite vertex.
pub fn sub_determine_vertex(v: &CompositeVertex, zeta: &SubDetSpec) -> Result<CompositeVertex> {
    zeta.check_order(v.order())?;
    Ok(CompositeVertex(zeta.retained().map(|i| v.elements()[i]).collect()))
}

/// The `n_ζ × n` sub-determination matrix `M_ζ`, stored as the class of
/// every composite vertex together with the members of every class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubDetMatrix {
    sub_tau: CompanionTuple,
    class_of: Vec<usize>,
    member_ptr: Vec<usize>,
    members: Vec<usize>,
}

/// Builds `M_ζ` in `O(n + n_ζ)` by walking the composite vertices in index order.
pub fn build_subdet_matrix(tau: &CompanionTuple, zeta: &SubDetSpec) -> Result<SubDetMatrix> {
    let sub_tau = sub_companion_tuple(tau, zeta)?;
    let n = tau.vertex_count();
    let p = tau.order();
    // place value of each aspect inside the sub-determined index (0 if dropped)
    let mut weight = vec![0usize; p];
    let mut radix = 1;
    for i in zeta.retained() {
        weight[i] = radix;
        radix *= tau.sizes()[i];
    }
    let mut digits = vec![0usize; p];
    let mut class_of = Vec::with_capacity(n);
    let mut current = 0usize;
    for _ in 0..n {
        class_of.push(current);
        // odometer increment, first aspect fastest
        for i in 0..p {
            digits[i] += 1;
            current += weight[i];
            if digits[i] < tau.sizes()[i] {
                break;
            }
            current -= weight[i] * digits[i];
            digits[i] = 0;
        }
    }
    let rows = sub_tau.vertex_count();
    let mut member_ptr = vec![0usize; rows + 1];
    for &c in &class_of {
        member_ptr[c + 1] += 1;
    }
    for i in 0..rows {
        member_ptr[i + 1] += member_ptr[i];
    }
    let mut fill = member_ptr.clone();
    let mut members = vec![0usize; n];
    for (j, &c) in class_of.iter().enumerate() {
        members[fill[c]] = j;
        fill[c] += 1;
    }
    Ok(SubDetMatrix {
        sub_tau,
        class_of,
        member_ptr,
        members,
    })
}

impl SubDetMatrix {
    /// `n_ζ`.
    pub fn rows(&self) -> usize {
        self.sub_tau.vertex_count()
    }

    /// `n`.
    pub fn cols(&self) -> usize {
        self.class_of.len()
    }

    pub fn sub_companion(&self) -> &CompanionTuple {
        &self.sub_tau
    }

    /// Row holding the single nonzero of column `j`.
    pub fn class_of(&self, j: usize) -> usize {
        self.class_of[j]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    /// Composite vertices of class `i`, ascending.
    pub fn members(&self, i: usize) -> &[usize] {
        &self.members[self.member_ptr[i]..self.member_ptr[i + 1]]
    }

    pub fn to_sparse<T: Semiring>(&self) -> SparseMatrix<T> {
        SparseMatrix::from_triplets(
            self.rows(),
            self.cols(),
            self.class_of.iter().enumerate().map(|(j, &i)| (i, j, T::ONE)),
        )
    }
}

/// `J_ζ = M_ζ J M_ζᵀ`. Keeps multiplicities and the diagonal (self-loops).
pub fn aggregate_adjacency<T: Semiring>(
    j: &SparseMatrix<T>,
    m: &SubDetMatrix,
) -> Result<SparseMatrix<T>> {
    j.require_square()?;
    let ms = m.to_sparse::<T>();
    if ms.cols() != j.rows() {
        return Err(ms.mismatch(j));
    }
    ms.matmul(j)?.matmul(&ms.transpose())
}

/// Zeroes the diagonal and replaces every other nonzero by one.
pub fn simplify_adjacency<T: Semiring>(jz: &SparseMatrix<T>) -> Result<SparseMatrix<T>> {
    jz.require_square()?;
    Ok(SparseMatrix::from_triplets(
        jz.rows(),
        jz.cols(),
        jz.entries()
            .filter(|&(r, c, _)| r != c)
            .map(|(r, c, _)| (r, c, T::ONE)),
    ))
}

/// Naive aggregation at the edge level: one arc per pair of distinct classes
/// joined by at least one MAG edge.
pub fn aggregate_mag(mag: &MagGraph, zeta: &SubDetSpec) -> Result<CompositeDigraph> {
    let m = build_subdet_matrix(mag.companion(), zeta)?;
    Ok(aggregate_with(mag, &m))
}

pub(crate) fn aggregate_with(mag: &MagGraph, m: &SubDetMatrix) -> CompositeDigraph {
    CompositeDigraph::from_arcs(
        m.rows(),
        mag.edges()
            .iter()
            .map(|&(u, v)| (m.class_of(u), m.class_of(v)))
            .filter(|(a, b)| a != b),
    )
}

/// The aggregate as a MAG over the retained aspects.
pub fn aggregate_mag_graph(mag: &MagGraph, zeta: &SubDetSpec) -> Result<MagGraph> {
    let agg = aggregate_mag(mag, zeta)?;
    let aspects: Vec<Aspect> = zeta
        .retained()
        .map(|i| mag.aspects()[i].clone())
        .collect();
    MagGraph::from_composite_arcs(aspects, agg.arcs(), DuplicatePolicy::Reject)
}

/// Names of the retained aspects, useful for labelling outputs.
pub fn retained_aspects(mag: &MagGraph, zeta: &SubDetSpec) -> Result<Vec<Aspect>> {
    zeta.check_order(mag.order())?;
    Ok(zeta.retained().map(|i| mag.aspects()[i].clone()).collect())
}
