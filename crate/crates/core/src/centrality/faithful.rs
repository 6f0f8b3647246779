use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::closeness::closeness_from_distances;
use super::exact::ExactSearch;
use super::{ClosenessMode, DistanceMode, SsspState};
use crate::count::{PathCount, SigmaCounter};
use crate::digraph::CompositeDigraph;
use crate::error::{MagError, Result};
use crate::mag::{CompanionTuple, MagGraph};
use crate::subdet::{build_subdet_matrix, SubDetMatrix, SubDetSpec};

/// A MAG's composite digraph together with its ζ-classes; the input of every
/// sub-determined traversal.
#[derive(Debug, Clone)]
pub struct SubDetView {
    graph: CompositeDigraph,
    classes: SubDetMatrix,
}

impl SubDetView {
    pub fn new(mag: &MagGraph, zeta: &SubDetSpec) -> Result<Self> {
        let classes = build_subdet_matrix(mag.companion(), zeta)?;
        Ok(SubDetView {
            graph: CompositeDigraph::from_mag(mag),
            classes,
        })
    }

    pub fn from_parts(graph: CompositeDigraph, classes: SubDetMatrix) -> Result<Self> {
        if graph.vertex_count() != classes.cols() {
            return Err(MagError::DimensionMismatch {
                left_rows: classes.rows(),
                left_cols: classes.cols(),
                right_rows: graph.vertex_count(),
                right_cols: graph.vertex_count(),
            });
        }
        Ok(SubDetView { graph, classes })
    }

    pub fn graph(&self) -> &CompositeDigraph {
        &self.graph
    }

    pub fn classes(&self) -> &SubDetMatrix {
        &self.classes
    }

    /// `n_ζ`.
    pub fn class_count(&self) -> usize {
        self.classes.rows()
    }

    pub fn sub_companion(&self) -> &CompanionTuple {
        self.classes.sub_companion()
    }

    fn check_class(&self, class: usize) -> Result<()> {
        if class < self.class_count() {
            Ok(())
        } else {
            Err(MagError::UnknownClass(class))
        }
    }

    /// Class-level BFS from `source` exactly as the published procedure runs
    /// it (see [`DistanceMode::Faithful`]). Predecessor lists keep one entry
    /// per arc that satisfied the shortest-path test, so they may repeat.
    pub fn sub_bfs(&self, source: usize) -> Result<SsspState<PathCount>> {
        self.sub_bfs_with(source)
    }

    pub fn sub_bfs_with<C: SigmaCounter>(&self, source: usize) -> Result<SsspState<C>> {
        self.check_class(source)?;
        let mut ws = Faithful::new(self.graph.vertex_count(), self.class_count());
        ws.search(self, source);
        Ok(SsspState {
            dist: ws.dist.clone(),
            sigma: ws.sigma.clone(),
            preds: ws.preds.clone(),
            order: ws.stack.clone(),
        })
    }

    /// Fewest-class-transition search from `source` (see [`DistanceMode::Exact`]).
    pub fn exact_search(&self, source: usize) -> Result<ExactSearch<PathCount>> {
        self.check_class(source)?;
        Ok(ExactSearch::run(&self.graph, &self.classes, source))
    }

    /// Class distances from `source` under `mode`.
    pub fn class_distances(&self, source: usize, mode: DistanceMode) -> Result<Vec<Option<usize>>> {
        match mode {
            DistanceMode::Faithful => Ok(self.sub_bfs_with::<f64>(source)?.dist),
            DistanceMode::Exact => {
                self.check_class(source)?;
                Ok(ExactSearch::<f64>::run(&self.graph, &self.classes, source).class_dist)
            }
        }
    }

    /// Betweenness contributions of the source classes in `sources`.
    pub fn betweenness_partial_with<C: SigmaCounter>(
        &self,
        sources: Range<usize>,
        mode: DistanceMode,
    ) -> Vec<f64> {
        let mut scores = vec![0.0; self.class_count()];
        match mode {
            DistanceMode::Faithful => {
                let mut ws = Faithful::<C>::new(self.graph.vertex_count(), self.class_count());
                for s in sources {
                    ws.search(self, s);
                    ws.accumulate(s, &mut scores);
                }
            }
            DistanceMode::Exact => {
                for s in sources {
                    ExactSearch::<C>::run(&self.graph, &self.classes, s).accumulate(
                        &self.graph,
                        &self.classes,
                        &mut scores,
                    );
                }
            }
        }
        scores
    }

    pub fn betweenness_partial(&self, sources: Range<usize>, mode: DistanceMode) -> Vec<f64> {
        self.betweenness_partial_with::<PathCount>(sources, mode)
    }

    pub fn betweenness(&self, mode: DistanceMode) -> Vec<f64> {
        self.betweenness_partial(0..self.class_count(), mode)
    }

    /// Closeness of the classes in `sources`; other entries are 0.
    pub fn closeness_partial(
        &self,
        sources: Range<usize>,
        distance: DistanceMode,
        mode: ClosenessMode,
    ) -> Vec<f64> {
        let mut scores = vec![0.0; self.class_count()];
        let mut ws = Faithful::<f64>::new(self.graph.vertex_count(), self.class_count());
        for s in sources {
            scores[s] = match distance {
                DistanceMode::Faithful => {
                    ws.search(self, s);
                    closeness_from_distances(&ws.dist, mode)
                }
                DistanceMode::Exact => {
                    let search = ExactSearch::<f64>::run(&self.graph, &self.classes, s);
                    closeness_from_distances(&search.class_dist, mode)
                }
            };
        }
        scores
    }

    pub fn closeness(&self, distance: DistanceMode, mode: ClosenessMode) -> Vec<f64> {
        self.closeness_partial(0..self.class_count(), distance, mode)
    }
}

/// Buffers of the published sub-determined Brandes procedure.
struct Faithful<C> {
    color: Vec<bool>,
    color_z: Vec<bool>,
    dist: Vec<Option<usize>>,
    sigma: Vec<C>,
    preds: Vec<Vec<usize>>,
    stack: Vec<usize>,
    queue: VecDeque<usize>,
    delta: Vec<f64>,
}

impl<C: SigmaCounter> Faithful<C> {
    fn new(n: usize, nz: usize) -> Self {
        Faithful {
            color: vec![false; n],
            color_z: vec![false; nz],
            dist: vec![None; nz],
            sigma: vec![C::zero(); nz],
            preds: vec![Vec::new(); nz],
            stack: Vec::new(),
            queue: VecDeque::new(),
            delta: vec![0.0; nz],
        }
    }

    fn search(&mut self, view: &SubDetView, s: usize) {
        let classes = &view.classes;
        self.color.iter_mut().for_each(|c| *c = false);
        self.color_z.iter_mut().for_each(|c| *c = false);
        self.dist.iter_mut().for_each(|d| *d = None);
        self.sigma.iter_mut().for_each(|x| *x = C::zero());
        self.preds.iter_mut().for_each(Vec::clear);
        self.stack.clear();
        self.queue.clear();
        self.sigma[s] = C::one();
        self.dist[s] = Some(0);
        for &i in classes.members(s) {
            self.color[i] = true;
            self.queue.push_back(i);
        }
        while let Some(v) = self.queue.pop_front() {
            let vz = classes.class_of(v);
            if !self.color_z[vz] {
                self.color_z[vz] = true;
                self.stack.push(vz);
            }
            let dv = self.dist[vz].expect("dequeued classes have a distance");
            for &w in view.graph.successors(v) {
                if !self.color[w] {
                    self.color[w] = true;
                    self.queue.push_back(w);
                }
                let wz = classes.class_of(w);
                if self.dist[wz].is_none() {
                    self.dist[wz] = Some(dv + 1);
                }
                if self.dist[wz] == Some(dv + 1) {
                    let add = self.sigma[vz].clone();
                    self.sigma[wz].add_assign(&add);
                    self.preds[wz].push(vz);
                }
            }
        }
    }

    fn accumulate(&mut self, s: usize, scores: &mut [f64]) {
        self.delta.iter_mut().for_each(|d| *d = 0.0);
        while let Some(w) = self.stack.pop() {
            let coeff = 1.0 + self.delta[w];
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v].ratio(&self.sigma[w]) * coeff;
            }
            if w != s {
                scores[w] += self.delta[w];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mag::{Aspect, DuplicatePolicy};

    fn mag_r() -> MagGraph {
        MagGraph::from_labels(
            vec![
                Aspect::new("vertex", ["1", "2", "3"]).unwrap(),
                Aspect::new("time", ["T1", "T2"]).unwrap(),
            ],
            [
                ["1", "T1", "1", "T2"],
                ["2", "T1", "3", "T1"],
                ["2", "T1", "2", "T2"],
                ["3", "T1", "3", "T2"],
                ["1", "T2", "2", "T2"],
            ],
            DuplicatePolicy::Reject,
        )
        .unwrap()
    }

    fn view() -> SubDetView {
        SubDetView::new(&mag_r(), &SubDetSpec::from_tuple(&[1, 0]).unwrap()).unwrap()
    }

    #[test]
    fn sub_bfs_examples() {
        let v = view();
        assert_eq!(v.sub_bfs(1).unwrap().dist, vec![None, Some(0), Some(1)]);
        assert_eq!(v.sub_bfs(0).unwrap().dist, vec![Some(0), Some(1), None]);
        assert_eq!(v.sub_bfs(2).unwrap().dist, vec![None, None, Some(0)]);
        assert!(matches!(v.sub_bfs(3), Err(MagError::UnknownClass(3))));
    }

    #[test]
    fn betweenness_is_zero_on_mag_r() {
        let v = view();
        for mode in [DistanceMode::Faithful, DistanceMode::Exact] {
            assert_eq!(v.betweenness(mode), vec![0.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn closeness_on_mag_r() {
        let v = view();
        for mode in [DistanceMode::Faithful, DistanceMode::Exact] {
            assert_eq!(v.closeness(mode, ClosenessMode::Harmonic), vec![1.0, 1.0, 0.0]);
        }
    }
}
