//! Multi-threaded centrality. Sources are cut into fixed chunks and partial
//! scores are summed in chunk order, so results do not depend on the number
//! of threads.

use std::ops::Range;

use mag_core::centrality::{
    betweenness_composite_partial, closeness_from_distances, CentralityRequest, Measure, Mode,
    SubDetView,
};
use mag_core::count::PathCount;
use mag_core::subdet::{aggregate_mag, sub_companion_tuple};
use mag_core::{CentralityVector, CompositeDigraph, MagError, MagGraph};
use rayon::prelude::*;

pub const CHUNK: usize = 32;

fn chunks(sources: usize) -> Vec<Range<usize>> {
    (0..sources)
        .step_by(CHUNK)
        .map(|s| s..(s + CHUNK).min(sources))
        .collect()
}

fn sum_chunks<F>(sources: usize, len: usize, partial: F) -> Vec<f64>
where
    F: Fn(Range<usize>) -> Vec<f64> + Sync,
{
    let parts: Vec<Vec<f64>> = chunks(sources).into_par_iter().map(&partial).collect();
    let mut total = vec![0.0; len];
    for part in parts {
        for (t, x) in total.iter_mut().zip(part) {
            *t += x;
        }
    }
    total
}

pub fn betweenness_composite(g: &CompositeDigraph) -> Vec<f64> {
    let n = g.vertex_count();
    sum_chunks(n, n, |r| betweenness_composite_partial::<PathCount>(g, r))
}

pub fn closeness_composite(g: &CompositeDigraph, mode: mag_core::ClosenessMode) -> Vec<f64> {
    (0..g.vertex_count())
        .into_par_iter()
        .map(|v| closeness_from_distances(&g.bfs_distances(v), mode))
        .collect()
}

pub fn betweenness_subdet(view: &SubDetView, distance: mag_core::DistanceMode) -> Vec<f64> {
    let nz = view.class_count();
    sum_chunks(nz, nz, |r| view.betweenness_partial(r, distance))
}

pub fn closeness_subdet(
    view: &SubDetView,
    distance: mag_core::DistanceMode,
    mode: mag_core::ClosenessMode,
) -> Vec<f64> {
    let nz = view.class_count();
    sum_chunks(nz, nz, |r| view.closeness_partial(r, distance, mode))
}

/// Parallel counterpart of `mag_core::centrality::compute`; same results.
pub fn compute(mag: &MagGraph, request: &CentralityRequest) -> mag_core::Result<CentralityVector> {
    let zeta = || {
        request
            .zeta
            .as_ref()
            .ok_or(MagError::InvalidParameter("this mode needs a sub-determination"))
    };
    match request.mode {
        Mode::Composite => {
            let g = CompositeDigraph::from_mag(mag);
            let scores = match request.measure {
                Measure::Betweenness => betweenness_composite(&g),
                Measure::Closeness => closeness_composite(&g, request.closeness),
            };
            CentralityVector::new(mag.companion().clone(), scores)
        }
        Mode::NaiveAggregate => {
            let zeta = zeta()?;
            let g = aggregate_mag(mag, zeta)?;
            let scores = match request.measure {
                Measure::Betweenness => betweenness_composite(&g),
                Measure::Closeness => closeness_composite(&g, request.closeness),
            };
            CentralityVector::new(sub_companion_tuple(mag.companion(), zeta)?, scores)
        }
        Mode::SubDet => {
            let view = SubDetView::new(mag, zeta()?)?;
            let scores = match request.measure {
                Measure::Betweenness => betweenness_subdet(&view, request.distance),
                Measure::Closeness => closeness_subdet(&view, request.distance, request.closeness),
            };
            CentralityVector::new(view.sub_companion().clone(), scores)
        }
    }
}

/// Runs `f` on a pool of `threads` workers, or on the global pool for `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}
