//! Shortest-path centralities.
//!
//! * Composite mode: Brandes betweenness on the composite digraph `g(H)`.
//! * Sub-determined mode: one traversal per ζ-class over the full composite
//!   digraph, seeded with every member of the class. Distances, path counts
//!   and predecessors are kept per class, so paths that only exist in the
//!   aggregate are never followed.
//! * Naive-aggregate mode: Brandes on the simplified aggregate digraph.
//!
//! Betweenness is directed and unnormalised with both endpoints excluded.
//! Closeness is harmonic by default; see [`ClosenessMode`].

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::digraph::CompositeDigraph;
use crate::error::{MagError, Result};
use crate::mag::{CompanionTuple, MagGraph};
use crate::subdet::{aggregate_mag, sub_companion_tuple, SubDetSpec};

mod brandes;
mod bruteforce;
mod closeness;
mod exact;
mod faithful;
mod paths;

pub use brandes::{
    betweenness_composite, betweenness_composite_partial, betweenness_composite_with, sssp_composite,
};
pub use bruteforce::{betweenness_bruteforce, BRUTEFORCE_LIMIT};
pub use closeness::{closeness_composite, closeness_from_distances};
pub use exact::ExactSearch;
pub use faithful::SubDetView;
pub use paths::{predecessor_paths, realize_class_path};

/// Single-source (or single-source-class) shortest-path record.
///
/// `dist[t]` is the hop distance (`None` when unreachable), `sigma[t]` the
/// number of shortest paths, `preds[t]` the predecessor list and `order` the
/// targets in the order they were finished (non-decreasing distance).
#[derive(Debug, Clone, PartialEq)]
pub struct SsspState<C> {
    pub dist: Vec<Option<usize>>,
    pub sigma: Vec<C>,
    pub preds: Vec<Vec<usize>>,
    pub order: Vec<usize>,
}

/// Centrality scores over `𝕍(H)` or `𝕍_ζ(H)`, indexed by (sub-)composite
/// vertex number.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    domain: CompanionTuple,
    scores: Vec<f64>,
}

impl CentralityVector {
    pub fn new(domain: CompanionTuple, scores: Vec<f64>) -> Result<Self> {
        if scores.len() != domain.vertex_count() {
            return Err(MagError::DimensionMismatch {
                left_rows: domain.vertex_count(),
                left_cols: 1,
                right_rows: scores.len(),
                right_cols: 1,
            });
        }
        if scores.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
            return Err(MagError::InvalidParameter("scores must be finite and nonnegative"));
        }
        Ok(CentralityVector { domain, scores })
    }

    pub fn domain(&self) -> &CompanionTuple {
        &self.domain
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn into_scores(self) -> Vec<f64> {
        self.scores
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Measure {
    #[default]
    Betweenness,
    Closeness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Every composite vertex on its own.
    Composite,
    /// Traversal of the full MAG keyed by ζ-classes.
    #[default]
    SubDet,
    /// Classic algorithms on the simplified aggregate.
    NaiveAggregate,
}

/// How class distances are measured in sub-determined mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMode {
    /// The published procedure: a composite-hop BFS whose first contact with
    /// a class fixes that class's distance. With intra-class arcs this can
    /// exceed the fewest class transitions, and the class paths it counts
    /// are not always realisable by one composite walk.
    #[default]
    Faithful,
    /// Fewest class transitions (0-1 BFS, intra-class arcs cost 0). A path
    /// is a sequence of inter-class arcs joined by intra-class walks; every
    /// counted path is realisable. A path that enters the same class twice
    /// credits it twice.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosenessMode {
    /// `Σ 1/d(v, u)` over reachable `u ≠ v`.
    #[default]
    Harmonic,
    /// `(r − 1)² / ((N − 1) Σ d(v, u))` over the `r` vertices reachable from
    /// `v` (itself included); 0 when `r ≤ 1`.
    Classic,
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($name:literal => $variant:expr),+ $(,)?) => {
        impl FromStr for $ty {
            type Err = MagError;
            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($name => Ok($variant),)+
                    _ => Err(MagError::InvalidParameter($what)),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                $(if *self == $variant {
                    return f.write_str($name);
                })+
                unreachable!()
            }
        }
    };
}

keyword_enum!(Measure, "measure must be betweenness or closeness",
    "betweenness" => Measure::Betweenness, "closeness" => Measure::Closeness);
keyword_enum!(Mode, "mode must be composite, subdet or naive-aggregate",
    "composite" => Mode::Composite, "subdet" => Mode::SubDet,
    "naive-aggregate" => Mode::NaiveAggregate);
keyword_enum!(DistanceMode, "distance must be faithful or exact",
    "faithful" => DistanceMode::Faithful, "exact" => DistanceMode::Exact);
keyword_enum!(ClosenessMode, "closeness must be harmonic or classic",
    "harmonic" => ClosenessMode::Harmonic, "classic" => ClosenessMode::Classic);

/// Everything that selects one centrality computation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CentralityRequest {
    pub measure: Measure,
    pub mode: Mode,
    /// Required unless `mode` is [`Mode::Composite`].
    pub zeta: Option<SubDetSpec>,
    pub distance: DistanceMode,
    pub closeness: ClosenessMode,
}

/// Sub-determined betweenness `ℂ^B_{v_ζ}`.
pub fn betweenness_subdet(
    mag: &MagGraph,
    zeta: &SubDetSpec,
    distance: DistanceMode,
) -> Result<CentralityVector> {
    let view = SubDetView::new(mag, zeta)?;
    CentralityVector::new(view.sub_companion().clone(), view.betweenness(distance))
}

/// Closeness over class distances from the sub-determined traversal.
pub fn closeness_subdet(
    mag: &MagGraph,
    zeta: &SubDetSpec,
    distance: DistanceMode,
    mode: ClosenessMode,
) -> Result<CentralityVector> {
    let view = SubDetView::new(mag, zeta)?;
    CentralityVector::new(view.sub_companion().clone(), view.closeness(distance, mode))
}

/// Runs `request` on `mag` single-threaded.
pub fn compute(mag: &MagGraph, request: &CentralityRequest) -> Result<CentralityVector> {
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
            let zeta = require_zeta(request)?;
            let g = aggregate_mag(mag, zeta)?;
            let scores = match request.measure {
                Measure::Betweenness => betweenness_composite(&g),
                Measure::Closeness => closeness_composite(&g, request.closeness),
            };
            CentralityVector::new(sub_companion_tuple(mag.companion(), zeta)?, scores)
        }
        Mode::SubDet => {
            let zeta = require_zeta(request)?;
            match request.measure {
                Measure::Betweenness => betweenness_subdet(mag, zeta, request.distance),
                Measure::Closeness => closeness_subdet(mag, zeta, request.distance, request.closeness),
            }
        }
    }
}

pub(crate) fn require_zeta(request: &CentralityRequest) -> Result<&SubDetSpec> {
    request
        .zeta
        .as_ref()
        .ok_or(MagError::InvalidParameter("this mode needs a sub-determination"))
}
