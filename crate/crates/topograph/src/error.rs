use thiserror::Error;

#[derive(Debug, Error)]
pub enum TopoError {
    #[error("unknown vertex label {0}")]
    UnknownVertex(u32),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("function is not locally injective: edge ({0},{1}) has equal values")]
    NotLocallyInjective(u32, u32),
    #[error("function value missing for vertex {0}")]
    MissingValue(u32),
    #[error("energy value missing for simplex {0:?}")]
    MissingEnergy(Vec<u32>),
    #[error("digraph is locally circular: clique {0:?} contains a closed path")]
    LocallyCircular(Vec<u32>),
    #[error("unknown simplex {0:?}")]
    UnknownSimplex(Vec<u32>),
    #[error("degree {0} out of range for complex of dimension {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("simplex set is neither open nor closed")]
    NotOpenOrClosed,
    #[error("cochain is not closed")]
    NotClosed,
    #[error("mismatched complexes")]
    MismatchedComplexes,
    #[error("simplex budget exceeded: more than {0} simplices")]
    SimplexBudget(usize),
    #[error("search budget exhausted after {0} nodes")]
    SearchBudget(u64),
    #[error("vertex count {0} exceeds cap {1}; use the heuristic search instead")]
    CapExceeded(usize, usize),
    #[error("skeleton dimension must be nonnegative")]
    NegativeSkeleton,
    #[error("degree {0} of vertex {1} exceeds the exact-expectation bound {2}; use Monte Carlo")]
    DegreeBound(usize, u32, usize),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, TopoError>;
