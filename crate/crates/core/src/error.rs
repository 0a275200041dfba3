use alloc::string::String;

/// Errors shared by every module of the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid generators: {0}")]
    InvalidGenerators(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("orbit exceeds cap of {cap} objects")]
    OrbitOverflow { cap: usize },
    #[error("no element of order {order} found within the search budget")]
    NotFound { order: u64 },
    #[error("element is not in the ambient group")]
    NotASubgroupElement,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("blocks have different sizes ({0} and {1})")]
    NonUniformBlockSize(usize, usize),
    #[error("points lie on different numbers of blocks ({0} and {1})")]
    NonUniformReplication(usize, usize),
    #[error("invalid incidence structure: {0}")]
    InvalidStructure(String),
    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("point classes do not partition the design: {0}")]
    PartitionViolation(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
