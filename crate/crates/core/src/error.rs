use thiserror::Error;

pub type Arc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("arc ({0},{1}) must satisfy i < j")]
    ReversedArc(usize, usize),
    #[error("arcs ({},{}) and ({},{}) cross", .0.0, .0.1, .1.0, .1.1)]
    CrossingArcs(Arc, Arc),
    #[error("ray {ray} lies under arc ({},{})", .arc.0, .arc.1)]
    RayUnderArc { ray: usize, arc: Arc },
    #[error("vertex {0} is used more than once")]
    VertexReuse(usize),
    #[error("dot on ({},{}) which is not an arc", .0.0, .0.1)]
    DotOnNonArc(Arc),
    #[error("bad counts: {0}")]
    BadCounts(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matching is not in the restrictable set: arc ({},{}) lies in the first {pad} vertices", .arc.0, .arc.1)]
    NotInRestrictableSet { arc: Arc, pad: usize },
    #[error("dotted matching is not standard")]
    NotStandard,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no standard completion: {0}")]
    NoStandardCompletion(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("type mismatch: ({0},{1}) vs ({2},{3})")]
    TypeMismatch(usize, usize, usize, usize),
    #[error("matchings are not compatible")]
    Incompatible,
    #[error("cycle detected in the arrow relation")]
    CycleDetected,
    #[error("no meet element found")]
    NotFound,
    #[error("pad size {pad} does not fit source of {n} slots")]
    PadSizeMismatch { pad: isize, n: usize },
    #[error("slot count mismatch: {0} vs {1}")]
    SlotMismatch(usize, usize),
    #[error("not an arrow pair")]
    NotAnArrowPair,
    #[error("class is not homogeneous")]
    InhomogeneousClass,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("solve failed: {0}")]
    SolveFailed(String),
    #[error("pullback failed: {0}")]
    PullbackFailed(String),
    #[error("no convention in the family fits the oracle")]
    NoConventionFits,
    #[error("bad permutation: {0}")]
    BadPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
