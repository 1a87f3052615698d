use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("odd generator degree r = {0}: graded commutativity forces u^2 = 0 away from characteristic 2")]
    OddGeneratorDegree(u32),

    #[error("generator degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),

    #[error("nilpotency index must satisfy k >= 2, got {0}")]
    NilpotencyTooSmall(u32),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("position {position} out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("operands live in different algebras")]
    AlgebraMismatch,

    #[error("scalar does not belong to the coefficient field of characteristic {0}")]
    ScalarMismatch(u64),

    #[error("exponent vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("term budget exceeded: expansion may reach {needed} terms, budget is {budget}")]
    TermBudget { needed: u128, budget: usize },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("lambda vanishes for odd k = {0}; there is nothing to factor")]
    LambdaVanishes(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid cohomology data: {}", .0.join("; "))]
    InvalidCohomology(Vec<String>),

    #[error("not rational with order-2 pole at 1: {0}")]
    NotRational(String),

    #[error("unrealizable cell structure: {0}")]
    Unrealizable(String),

    #[error("invalid cell structure: {0}")]
    InvalidStructure(String),

    #[error("malformed input: {0}")]
    Parse(String),
}
