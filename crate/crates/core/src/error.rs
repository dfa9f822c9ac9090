use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{d} does not divide {n}")]
    InvalidDivisor { n: u32, d: u32 },

    #[error("invalid CRT frame: {0}")]
    InvalidFrame(String),

    #[error("invalid connection set for n = {n}: {reason}")]
    InvalidConnectionSet { n: u32, reason: String },

    #[error("orders {0} and {1} are not coprime; the product is not a circulant")]
    NotACirculant(u32, u32),

    #[error("subgroup of order {order} is not contained in the translation kernel")]
    InvalidQuotient { order: u32 },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("arc-transitivity is undefined for a digraph without arcs")]
    EmptyArcSet,

    #[error("group of order {order} exceeds the enumeration guard {guard}")]
    OracleTooLarge { order: u128, guard: u128 },

    #[error("lifting hypothesis violated: prime divisors of {m} differ from those of {n}")]
    HypothesisViolation { n: u32, m: u32 },

    #[error("{k} is not a unit modulo {m}")]
    NotAUnit { k: u32, m: u32 },

    #[error("precondition failed: {0} is disconnected")]
    Disconnected(String),

    #[error("precondition failed: {0} is not arc-transitive")]
    NotArcTransitive(String),

    #[error("decomposition of {0} does not reconstruct the input")]
    ReconstructionMismatch(String),

    #[error("n_max = {0} is outside the exhaustive range 3..=16")]
    GuardExceeded(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
