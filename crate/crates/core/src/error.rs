use alloc::string::String;

pub type Result<T, E = MagError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MagError {
    #[error("a MAG needs at least one aspect")]
    NoAspects,
    #[error("aspect {0} has no elements")]
    EmptyAspect(usize),
    #[error("aspect repeats the label {label:?}")]
    DuplicateLabel { label: String },
    #[error("edge has {found} elements, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("label {label:?} is not an element of aspect {aspect}")]
    UnknownLabel { aspect: usize, label: String },
    #[error("edge {from} -> {to} appears more than once")]
    DuplicateEdge { from: usize, to: usize },
    #[error("index {index} is out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },
    #[error("sub-determination has {found} entries, the MAG has {expected} aspects")]
    SpecArityMismatch { expected: usize, found: usize },
    #[error("sub-determination must keep at least one aspect and drop at least one")]
    ImproperSpec,
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("power series diverges (spectral radius {spectral_radius} >= 1)")]
    Divergence { spectral_radius: f64 },
    #[error("class {0} is not a sub-determined vertex")]
    UnknownClass(usize),
    #[error("input of size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("{requested} edges requested but only {capacity} distinct pairs exist")]
    TooManyEdges { requested: usize, capacity: usize },
    #[error("no persistence reaches weight {weight} over depth {depth}")]
    NoSolution { weight: f64, depth: usize },
    #[error("rankings do not cover the same identifiers")]
    UniverseMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
