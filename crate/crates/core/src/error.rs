use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("edge from {tail:?} to {head:?} is not primitive (lattice length {length})")]
    NonPrimitiveEdge {
        tail: Vec<i64>,
        head: Vec<i64>,
        length: i64,
    },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("cone is not pointed (lineality dimension {0})")]
    NotPointed(usize),
    #[error("not a point of the summand cone: {0}")]
    NotASummandPoint(String),
    #[error("no face representation for covector {0:?}")]
    NoFaceRepresentation(Vec<i64>),
    #[error("check failed: {0}")]
    ReportedFailure(String),
}

impl Error {
    /// 2 for bad input, 3 for a broken invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::NonPrimitiveEdge { .. }
            | Error::DegenerateInput(_)
            | Error::NotASummandPoint(_) => 2,
            Error::NotPointed(_) | Error::NoFaceRepresentation(_) | Error::ReportedFailure(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
