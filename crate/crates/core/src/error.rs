use thiserror::Error;

/// Errors raised by construction, verification and enumeration routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {order} exceeds the supported limit {limit}")]
    FieldTooLarge { order: u64, limit: u64 },
    #[error("polynomial is not primitive over the coefficient field")]
    NotPrimitive,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("containment violated: {0}")]
    ContainmentViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("basis is linearly dependent over the base field")]
    DependentBasis,
    #[error("word is not a codeword")]
    NotInCode,
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("fields do not match: {0}")]
    FieldMismatch(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Upper bound on exhaustive enumerations (codewords, words, ensemble checks).
///
/// The default is 2^24 and can be overridden with the `CONJ_BUDGET`
/// environment variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: u64 = 1 << 24;

    pub fn from_env() -> Self {
        std::env::var("CONJ_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget)
            .unwrap_or(Budget(Self::DEFAULT))
    }

    pub fn check(self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::BudgetExceeded { needed, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::from_env()
    }
}

/// `base^exp` as u128, or `None` on overflow.
pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}
