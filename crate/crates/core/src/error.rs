use thiserror::Error;

/// Errors produced by field construction, code modelling and bound evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field of order {0} exceeds the supported maximum of 2^20")]
    FieldTooLarge(u64),
    #[error("zero has no multiplicative inverse or order")]
    ZeroElement,
    #[error("m not coprime to characteristic (m = {m}, p = {p})")]
    MNotCoprime { m: usize, p: u32 },
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("no compatible primitive root of order {order} with m-th power equal to lambda")]
    NoCompatibleRoot { order: u64 },
    #[error("element is not in the subfield of relative degree {0}")]
    NotInSubfield(u32),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("oracle budget exceeded: span of size {needed} > budget {budget}")]
    OracleBudget { needed: u128, budget: u64 },
    #[error("column subset cap exceeded: more than {cap} subset rank evaluations")]
    SubsetCap { cap: u64 },
    #[error("eigenvalue set has {size} elements, above the subset cap of {cap}")]
    SubsetBits { size: usize, cap: u32 },
    #[error("record outside eigenvalue set")]
    RecordOutsideEigenvalues,
    #[error("invalid code specification: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for the errors caused by a configured search or enumeration limit.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OracleBudget { .. } | Error::SubsetCap { .. } | Error::SubsetBits { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
