use thiserror::Error;

/// Errors produced by the krfusion engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Lie type `{0}` (supported: A1, A2, A3, B2, C2, B3, C3, D4, G2)")]
    UnsupportedType(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("unsupported realization: {0}")]
    UnsupportedRealization(String),
    #[error("evaluation points must be pairwise distinct")]
    CoincidentPoints,
    #[error("module is not cyclic: {0}")]
    NonCyclic(String),
    #[error("not stabilized within schedule; trace {trace:?}")]
    NotStabilized { trace: Vec<(i64, u64)> },
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("word weight exceeds the weight of the function")]
    OverweightWord,
    #[error("tuple of partitions must contain at least one box")]
    EmptyTuple,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0:?} is not a positive root")]
    NotPositiveRoot(Vec<u32>),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
