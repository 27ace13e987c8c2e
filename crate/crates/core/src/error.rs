use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported Coxeter type {family}{rank}")]
    UnsupportedType { family: char, rank: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("root index {index} out of range (N = {n_pos})")]
    RootOutOfRange { index: usize, n_pos: usize },
    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },
    #[error("subset {sub:?} is not contained in {sup:?}")]
    NotASubset { sub: Vec<usize>, sup: Vec<usize> },
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("{0} is not a partition of {1}")]
    NotAPartition(String, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("malformed cyclotomic literal {text:?}: {reason}")]
    BadCyclotomic { text: String, reason: String },
    #[error("value {0} is not a root of unity")]
    NotARootOfUnity(String),
    #[error("inconsistent character values: words {first:?} and {second:?} reach the same element with values {value_a} and {value_b}")]
    InconsistentCharacter {
        first: Vec<usize>,
        second: Vec<usize>,
        value_a: String,
        value_b: String,
    },
    #[error("generators span a subgroup of order {got} but the group has order {expected}")]
    NotGenerating { got: usize, expected: usize },
    #[error("element does not preserve the subspace")]
    NotInvariant,
    #[error("element does not centralize the reference element")]
    NotCentralizing,
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = core::result::Result<T, Error>;
