use thiserror::Error;

/// Errors raised by set construction, measurement and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element {0}")]
    DuplicateElement(i64),
    #[error("value out of exact range (|x| <= 2^62 required)")]
    Overflow,
    #[error("empty input")]
    Empty,
    #[error("set too small: need at least {need} elements, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("set is not a Sidon set")]
    NotSidon,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: u64, divisor: u64 },
    #[error("set does not have distinct consecutive differences")]
    NotDcd,
    #[error("sets do not have distinct pairs of consecutive differences")]
    NotDistinctPairs,
    #[error("set is not convex")]
    NotConvex,
    #[error("map is not strictly convex and increasing on the input: {0}")]
    NotConvexFunction(String),
    #[error("resource limit: {needed} units requested, budget {budget}")]
    ResourceLimit { needed: u128, budget: u128 },
    #[error("search budget exceeded: {needed} states, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
