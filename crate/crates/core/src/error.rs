use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty multiset")]
    EmptyMultiset,
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),
    #[error("vector is not in the algebraic cycle space")]
    NotInAlgebraicCycleSpace,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("empty structural data on edge {0}")]
    EmptyStructuralData(String),
    #[error("hypergraph is not star-shaped: {0}")]
    NotStarShaped(String),
    #[error("wrong characteristic: expected {expected}, found {found}")]
    WrongCharacteristic { expected: u64, found: u64 },
    #[error("wrong construction: {0}")]
    WrongConstruction(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    pub(crate) fn inconsistency(msg: impl Into<String>) -> Self {
        Error::InternalInconsistency(msg.into())
    }
}
