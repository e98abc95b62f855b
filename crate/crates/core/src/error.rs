use thiserror::Error;

/// Errors raised by the tile computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not expanding: |A| = {a} exceeds B = {b}")]
    NotExpanding { a: i64, b: i64 },
    #[error("v and M0·v are linearly dependent")]
    DegenerateBasis,
    #[error("determinant B = {0} must be at least 2")]
    BadDeterminant(i64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("digit words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("digit {digit} out of range for B = {b}")]
    InvalidDigit { digit: u32, b: i64 },
    #[error("operation requires {required}, got A = {a}, B = {b}")]
    WrongRegime { required: &'static str, a: i64, b: i64 },
    #[error("incidence matrix is not irreducible")]
    NotIrreducible,
    #[error("no consistent edge ordering of the contact graph")]
    NoConsistentOrdering,
    #[error("walk of the parameter is not eventually periodic within {0} steps")]
    NonPeriodicWalk(usize),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("walk budget exceeded: {needed} walks > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("chain violation: {0}")]
    ChainViolation(String),
    #[error("identity failure: {0}")]
    IdentityFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Regime errors are reported with their own exit code by the CLI.
    pub fn is_regime(&self) -> bool {
        matches!(self, Error::WrongRegime { .. } | Error::OutOfRange(_))
    }

    /// Failed verifications signal a bug or an unsupported instance.
    pub fn is_verification(&self) -> bool {
        matches!(
            self,
            Error::CertificateFailure(_)
                | Error::ChainViolation(_)
                | Error::IdentityFailure(_)
                | Error::NoConsistentOrdering
                | Error::NotIrreducible
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
