//! Shortest-path centralities on MultiAspect Graphs (MAGs).
//!
//! A MAG is a list of aspects (vertices, layers, time instants, ...) and a set
//! of edges joining one element of every aspect to one element of every
//! aspect. Its composite vertices (the Cartesian product of the aspects) form
//! an ordinary directed graph. Projecting that graph onto a proper subset of
//! the aspects ("sub-determination", a generalised aggregation) can create
//! paths that do not exist in the original network. This crate computes
//! betweenness and closeness both on the naive aggregate and with the
//! sub-determined traversal that runs over the full composite graph and
//! therefore never follows a spurious path.
//!
//! Everything here is `no_std` + `alloc`. File formats, the CLI and parallel
//! drivers live in the companion `mag` crate.
//!
//! Indices are 0-based throughout this crate. Composite vertices are numbered
//! in mixed radix with the first aspect as the least significant digit.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod centrality;
pub mod count;
pub mod digraph;
pub mod error;
pub mod generate;
pub mod mag;
pub mod oracle;
pub mod ranking;
pub mod sparse;
pub mod subdet;

pub use centrality::{CentralityVector, ClosenessMode, DistanceMode};
pub use digraph::CompositeDigraph;
pub use error::{MagError, Result};
pub use mag::{Aspect, CompanionTuple, CompositeVertex, DuplicatePolicy, MagGraph};
pub use sparse::{Semiring, SparseMatrix};
pub use subdet::{SubDetMatrix, SubDetSpec};
