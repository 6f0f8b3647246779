//! The MAG data model: aspects, the companion tuple and composite vertices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{MagError, Result};

/// One dimension of a MAG: a name and an ordered list of distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aspect {
    name: String,
    labels: Vec<String>,
    lookup: BTreeMap<String, usize>,
}

impl Aspect {
    pub fn new<S: Into<String>, L: Into<String>>(
        name: S,
        labels: impl IntoIterator<Item = L>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut lookup = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            if lookup.insert(label.clone(), i).is_some() {
                return Err(MagError::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(Aspect {
            name: name.into(),
            labels,
            lookup,
        })
    }

    /// An aspect whose elements are labelled `1..=size`.
    pub fn indexed<S: Into<String>>(name: S, size: usize) -> Self {
        let labels: Vec<String> = (1..=size).map(|i| format!("{i}")).collect();
        let lookup = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Aspect {
            name: name.into(),
            labels,
            lookup,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, element: usize) -> Option<&str> {
        self.labels.get(element).map(String::as_str)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }
}

/// Per-aspect cardinalities `(τ₁, …, τ_p)`.
///
/// This is all that is needed to move between a composite vertex tuple and
/// its integer index. The encoding is mixed radix with the first aspect as
/// the least significant digit, so for `τ = (3, 2)` the vertices are numbered
/// `(0,0)=0, (1,0)=1, (2,0)=2, (0,1)=3, (1,1)=4, (2,1)=5`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompanionTuple {
    sizes: Vec<usize>,
    vertex_count: usize,
}

impl CompanionTuple {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(MagError::NoAspects);
        }
        let mut vertex_count = 1usize;
        for (i, &s) in sizes.iter().enumerate() {
            if s == 0 {
                return Err(MagError::EmptyAspect(i));
            }
            vertex_count = vertex_count.checked_mul(s).ok_or(MagError::TooLarge {
                size: usize::MAX,
                limit: usize::MAX,
            })?;
        }
        Ok(CompanionTuple {
            sizes,
            vertex_count,
        })
    }

    pub fn order(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `n = Π τᵢ`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn encode(&self, v: &CompositeVertex) -> Result<usize> {
        self.encode_elements(v.elements())
    }

    pub fn encode_elements(&self, elements: &[usize]) -> Result<usize> {
        if elements.len() != self.sizes.len() {
            return Err(MagError::ArityMismatch {
                expected: self.sizes.len(),
                found: elements.len(),
            });
        }
        let mut index = 0usize;
        let mut radix = 1usize;
        for (&a, &size) in elements.iter().zip(&self.sizes) {
            if a >= size {
                return Err(MagError::OutOfRange {
                    index: a,
                    limit: size,
                });
            }
            index += a * radix;
            radix *= size;
        }
        Ok(index)
    }

    pub fn decode(&self, index: usize) -> Result<CompositeVertex> {
        let mut elements = alloc::vec![0; self.sizes.len()];
        self.decode_into(index, &mut elements)?;
        Ok(CompositeVertex(elements))
    }

    /// Decodes into a caller-provided buffer of length `p`.
    pub fn decode_into(&self, index: usize, out: &mut [usize]) -> Result<()> {
        if index >= self.vertex_count {
            return Err(MagError::OutOfRange {
                index,
                limit: self.vertex_count,
            });
        }
        debug_assert_eq!(out.len(), self.sizes.len());
        let mut rest = index;
        for (slot, &size) in out.iter_mut().zip(&self.sizes) {
            *slot = rest % size;
            rest /= size;
        }
        Ok(())
    }
}

/// A composite vertex `(a₁, …, a_p)` holding one element index per aspect.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositeVertex(pub Vec<usize>);

impl CompositeVertex {
    pub fn new(elements: Vec<usize>) -> Self {
        CompositeVertex(elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// The element of aspect `aspect` (0-based position).
    pub fn project(&self, aspect: usize) -> Result<usize> {
        self.0.get(aspect).copied().ok_or(MagError::OutOfRange {
            index: aspect,
            limit: self.0.len(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// A repeated edge is an error; the edge set of a MAG is a set.
    #[default]
    Reject,
    /// Repeated edges are merged silently.
    Merge,
}

/// A MultiAspect Graph `H = (A, E)`.
///
/// Edges are stored as sorted, distinct `(from, to)` pairs of composite
/// vertex indices. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagGraph {
    aspects: Vec<Aspect>,
    tau: CompanionTuple,
    edges: Vec<(usize, usize)>,
}

impl MagGraph {
    /// Builds a MAG from edges written as `2p` element labels.
    pub fn from_labels<E, S>(
        aspects: Vec<Aspect>,
        edges: impl IntoIterator<Item = E>,
        policy: DuplicatePolicy,
    ) -> Result<Self>
    where
        E: AsRef<[S]>,
        S: AsRef<str>,
    {
        let tau = companion_of(&aspects)?;
        let p = aspects.len();
        let mut buf = alloc::vec![0usize; 2 * p];
        let mut arcs = Vec::new();
        for edge in edges {
            let edge = edge.as_ref();
            if edge.len() != 2 * p {
                return Err(MagError::ArityMismatch {
                    expected: 2 * p,
                    found: edge.len(),
                });
            }
            for (k, token) in edge.iter().enumerate() {
                let aspect = k % p;
                let token = token.as_ref();
                buf[k] = aspects[aspect]
                    .position(token)
                    .ok_or_else(|| MagError::UnknownLabel {
                        aspect,
                        label: String::from(token),
                    })?;
            }
            arcs.push((
                tau.encode_elements(&buf[..p])?,
                tau.encode_elements(&buf[p..])?,
            ));
        }
        Self::assemble(aspects, tau, arcs, policy)
    }

    /// Builds a MAG from edges written as `2p` element indices (0-based).
    pub fn from_element_indices<E>(
        aspects: Vec<Aspect>,
        edges: impl IntoIterator<Item = E>,
        policy: DuplicatePolicy,
    ) -> Result<Self>
    where
        E: AsRef<[usize]>,
    {
        let tau = companion_of(&aspects)?;
        let p = aspects.len();
        let mut arcs = Vec::new();
        for edge in edges {
            let edge = edge.as_ref();
            if edge.len() != 2 * p {
                return Err(MagError::ArityMismatch {
                    expected: 2 * p,
                    found: edge.len(),
                });
            }
            arcs.push((
                tau.encode_elements(&edge[..p])?,
                tau.encode_elements(&edge[p..])?,
            ));
        }
        Self::assemble(aspects, tau, arcs, policy)
    }

    /// Builds a MAG from edges given as composite vertex index pairs.
    pub fn from_composite_arcs(
        aspects: Vec<Aspect>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
        policy: DuplicatePolicy,
    ) -> Result<Self> {
        let tau = companion_of(&aspects)?;
        let n = tau.vertex_count();
        let mut list = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(MagError::OutOfRange { index: x, limit: n });
                }
            }
            list.push((u, v));
        }
        Self::assemble(aspects, tau, list, policy)
    }

    fn assemble(
        aspects: Vec<Aspect>,
        tau: CompanionTuple,
        mut arcs: Vec<(usize, usize)>,
        policy: DuplicatePolicy,
    ) -> Result<Self> {
        arcs.sort_unstable();
        match policy {
            DuplicatePolicy::Reject => {
                if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
                    return Err(MagError::DuplicateEdge {
                        from: w[0].0,
                        to: w[0].1,
                    });
                }
            }
            DuplicatePolicy::Merge => arcs.dedup(),
        }
        Ok(MagGraph {
            aspects,
            tau,
            edges: arcs,
        })
    }

    pub fn aspects(&self) -> &[Aspect] {
        &self.aspects
    }

    pub fn companion(&self) -> &CompanionTuple {
        &self.tau
    }

    /// The order `p` of the MAG.
    pub fn order(&self) -> usize {
        self.aspects.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.tau.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted composite index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex(&self, index: usize) -> Result<CompositeVertex> {
        self.tau.decode(index)
    }

    /// Labels of a composite vertex, one per aspect.
    pub fn vertex_labels(&self, index: usize) -> Result<Vec<&str>> {
        let v = self.tau.decode(index)?;
        Ok(v.elements()
            .iter()
            .zip(&self.aspects)
            .map(|(&e, a)| a.labels()[e].as_str())
            .collect())
    }
}

fn companion_of(aspects: &[Aspect]) -> Result<CompanionTuple> {
    if aspects.is_empty() {
        return Err(MagError::NoAspects);
    }
    if let Some(i) = aspects.iter().position(Aspect::is_empty) {
        return Err(MagError::EmptyAspect(i));
    }
    CompanionTuple::new(aspects.iter().map(Aspect::len).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn mag_r_aspects() -> Vec<Aspect> {
        vec![
            Aspect::new("vertex", ["1", "2", "3"]).unwrap(),
            Aspect::new("time", ["T1", "T2"]).unwrap(),
        ]
    }

    #[test]
    fn codec_matches_column_pattern() {
        let tau = CompanionTuple::new(vec![3, 2]).unwrap();
        // D((1,T1)) = 1 and D((1,T2)) = 4 in 1-based terms.
        assert_eq!(tau.encode(&CompositeVertex(vec![0, 0])).unwrap(), 0);
        assert_eq!(tau.encode(&CompositeVertex(vec![0, 1])).unwrap(), 3);
        assert_eq!(tau.encode(&CompositeVertex(vec![2, 1])).unwrap(), 5);
        assert_eq!(tau.decode(0).unwrap(), CompositeVertex(vec![0, 0]));
        assert_eq!(tau.decode(3).unwrap(), CompositeVertex(vec![0, 1]));
        assert_eq!(
            tau.decode(6),
            Err(MagError::OutOfRange { index: 6, limit: 6 })
        );
    }

    #[test]
    fn codec_enumerates_first_aspect_fastest() {
        let tau = CompanionTuple::new(vec![3, 2]).unwrap();
        let mut expected = Vec::new();
        for t in 0..2 {
            for v in 0..3 {
                expected.push(vec![v, t]);
            }
        }
        for (j, e) in expected.iter().enumerate() {
            assert_eq!(tau.decode(j).unwrap().0, *e);
            assert_eq!(tau.encode_elements(e).unwrap(), j);
        }
    }

    #[test]
    fn encode_rejects_out_of_range_element() {
        let tau = CompanionTuple::new(vec![3, 2]).unwrap();
        assert!(matches!(
            tau.encode(&CompositeVertex(vec![0, 2])),
            Err(MagError::OutOfRange { .. })
        ));
    }

    #[test]
    fn projection() {
        let v = CompositeVertex(vec![1, 0]);
        assert_eq!(v.project(0).unwrap(), 1);
        assert_eq!(v.project(1).unwrap(), 0);
        assert!(matches!(v.project(2), Err(MagError::OutOfRange { .. })));
    }

    #[test]
    fn build_mag_r() {
        let edges = [
            ["1", "T1", "1", "T2"],
            ["2", "T1", "3", "T1"],
            ["2", "T1", "2", "T2"],
            ["3", "T1", "3", "T2"],
            ["1", "T2", "2", "T2"],
        ];
        let mag = MagGraph::from_labels(mag_r_aspects(), edges, DuplicatePolicy::Reject).unwrap();
        assert_eq!(mag.order(), 2);
        assert_eq!(mag.vertex_count(), 6);
        assert_eq!(mag.edge_count(), 5);
        assert_eq!(mag.vertex_labels(4).unwrap(), vec!["2", "T2"]);
    }

    #[test]
    fn single_element_aspect() {
        let mag = MagGraph::from_labels(
            vec![Aspect::new("x", ["x"]).unwrap()],
            Vec::<[&str; 2]>::new(),
            DuplicatePolicy::Reject,
        )
        .unwrap();
        assert_eq!(mag.vertex_count(), 1);
        assert_eq!(mag.edge_count(), 0);
    }

    #[test]
    fn build_errors() {
        let err = MagGraph::from_labels(mag_r_aspects(), [["1", "T1", "2"]], DuplicatePolicy::Reject);
        assert_eq!(
            err,
            Err(MagError::ArityMismatch {
                expected: 4,
                found: 3
            })
        );
        let err = MagGraph::from_labels(
            mag_r_aspects(),
            [["1", "T9", "2", "T1"]],
            DuplicatePolicy::Reject,
        );
        assert!(matches!(err, Err(MagError::UnknownLabel { aspect: 1, .. })));
        let dup = [["1", "T1", "2", "T1"], ["1", "T1", "2", "T1"]];
        assert!(matches!(
            MagGraph::from_labels(mag_r_aspects(), dup, DuplicatePolicy::Reject),
            Err(MagError::DuplicateEdge { from: 0, to: 1 })
        ));
        let merged = MagGraph::from_labels(mag_r_aspects(), dup, DuplicatePolicy::Merge).unwrap();
        assert_eq!(merged.edge_count(), 1);
        assert_eq!(
            MagGraph::from_labels(vec![], Vec::<[&str; 0]>::new(), DuplicatePolicy::Reject),
            Err(MagError::NoAspects)
        );
        let empty = Aspect::new("e", Vec::<String>::new()).unwrap();
        assert_eq!(
            MagGraph::from_labels(vec![empty], Vec::<[&str; 2]>::new(), DuplicatePolicy::Reject),
            Err(MagError::EmptyAspect(0))
        );
        assert!(matches!(
            Aspect::new("dup", ["a", "a"]),
            Err(MagError::DuplicateLabel { .. })
        ));
    }
}
