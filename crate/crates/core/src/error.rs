use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("unsupported size {size} (limit {limit})")]
    UnsupportedSize { size: usize, limit: usize },

    #[error("vertex {index} out of range for {n} vertices")]
    Index { index: usize, n: usize },

    #[error("invalid family parameter: {0}")]
    Spec(String),

    #[error("degree mismatch: {left} vs {right}")]
    Degree { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("automorphism group exceeds element cap {0}")]
    GroupTooLarge(usize),

    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{{{0}, {1}}} is not a determining set")]
    NotDeterminingPair(usize, usize),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("graphs are not distinguishably equivalent")]
    NotEquivalent,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
