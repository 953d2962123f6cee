use thiserror::Error;

/// Errors raised by constructions whose preconditions fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    BadPrime(u32),
    #[error("group order {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("modules live over different groups or primes")]
    Mismatch,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("subspace is not invariant under the group action")]
    NotInvariant,
    #[error("matrix is not equivariant")]
    NotEquivariant,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("word: {0}")]
    Word(String),
    #[error("module is not certified indecomposable")]
    NotCertified,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
