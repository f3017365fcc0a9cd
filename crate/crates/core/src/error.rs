use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(u64),

    #[error("a split bundle needs at least one summand")]
    EmptyBundle,

    #[error("a projective bundle surface needs rank >= 2, got rank {0}")]
    RankTooSmall(usize),

    #[error("{op} supports rank {supported} only, got rank {rank}")]
    UnsupportedRank {
        op: &'static str,
        supported: usize,
        rank: usize,
    },

    #[error("Frobenius undefined in characteristic zero")]
    FrobeniusCharZero,

    #[error("multiple must be positive, got {0}")]
    NonPositiveMultiple(i64),

    #[error("expected {expected} classes, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("m_max must be at least 8, got {0}")]
    MMaxTooSmall(u64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("budget class ({a}, {b}) is not pseudoeffective on the base surface")]
    BudgetNotPseudoEffective { a: i64, b: i64 },

    #[error("class has {got} exceptional coefficients, surface has {expected} blow-ups")]
    ExceptionalLength { expected: usize, got: usize },

    #[error("invalid scan spec: {0}")]
    InvalidScan(String),

    #[error("scenario: {0}")]
    Schema(String),
}
