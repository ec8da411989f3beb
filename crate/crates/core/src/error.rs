use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring axiom `{axiom}` fails at ({}, {}, {})", witness.0, witness.1, witness.2)]
    AxiomViolation {
        axiom: &'static str,
        witness: (u32, u32, u32),
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{what} of size {size} exceeds cap {cap}")]
    SizeCapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("ideal is not idempotent")]
    NotIdempotent,
    #[error("enumeration produced more than {cap} {what}")]
    EnumerationCapExceeded { what: &'static str, cap: usize },
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error("map is not an epimorphism")]
    NotEpi,
    #[error("ring is not commutative")]
    NotCommutative,
    #[error("matrix entries are not all in the ideal")]
    EntriesNotInIdeal,
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}
