use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("letter index {0} is not a generator of this graph")]
    GraphMismatch(u8),
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration exceeded the cap of {cap} words")]
    ResourceLimit { cap: usize },
    #[error("no convergence after {0} iterations")]
    NonConvergence(usize),
    #[error("independent computations disagree: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
