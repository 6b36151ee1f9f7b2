use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NonSquare { rows: usize, row: usize, len: usize },
    #[error("non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },
    #[error("matrix is not symmetric at ({i}, {j}): deviation {deviation:e}")]
    NonSymmetric { i: usize, j: usize, deviation: f64 },
    #[error("negative distance at ({i}, {j})")]
    NegativeEntry { i: usize, j: usize },
    #[error("non-zero diagonal entry at {i}: {value:e}")]
    NonZeroDiagonal { i: usize, value: f64 },
    #[error("triangle inequality violated for ({i}, {j}, {k}) by {excess:e}")]
    TriangleViolation { i: usize, j: usize, k: usize, excess: f64 },
    #[error("similarity at ({i}, {j}) is not strictly positive")]
    ZeroSimilarity { i: usize, j: usize },
    #[error("sampling method {method} does not support S^{n}")]
    MethodDimensionMismatch { method: &'static str, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty subset")]
    EmptySubset,
    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("size {size} exceeds limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("dimension cap {dim_cap} is too low for homology up to dimension {max_dim}")]
    DimCapTooLow { dim_cap: usize, max_dim: usize },
    #[error("simplex {index} violates the filtration order")]
    InvalidFiltrationOrder { index: usize },
    #[error("complex is not closed under faces: missing a face of simplex {index}")]
    NotFaceClosed { index: usize },
    #[error("measure does not match the metric space: {0}")]
    MetricMismatch(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("plan exceeds a marginal at {side} index {index}")]
    NotPartialPlan { side: &'static str, index: usize },
    #[error("transport solver failed to converge")]
    FlowDidNotConverge,
    #[error("support is not a single antipodal pair")]
    NotAntipodalSupport,
    #[error("support spread {spread} is below the required scale {required}")]
    SpreadTooSmall { spread: f64, required: f64 },
    #[error("measure has {found} support points, at most {max} allowed")]
    TooManySupportPoints { found: usize, max: usize },
    #[error("scale {0} is outside the supported range")]
    InvalidScale(f64),
    #[error("support admits no bipartition with all cross distances at least the scale")]
    NoValidBipartition,
    #[error("cluster barycenter is at the origin")]
    ZeroBarycenter,
    #[error("runtime bound violated: {0}")]
    BoundViolated(String),
    #[error("direction is degenerate after projection")]
    DegenerateDirection,
    #[error("point {point} is not covered by the net")]
    NotANet { point: usize },
    #[error("lift step {step} is ambiguous: gap {gap}")]
    AmbiguousLiftStep { step: usize, gap: f64 },
    #[error("coloring covers {found} of {expected} vertices")]
    PartialColoring { found: usize, expected: usize },
    #[error("map has {found} entries for {expected} vertices or targets out of range")]
    PartialMap { found: usize, expected: usize },
    #[error("homomorphism search timed out")]
    Timeout,
    #[error("metric space carries no ambient coordinates")]
    NoAmbient,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
