use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank n = {0} must be at least 2")]
    RankTooSmall(u32),
    #[error("genus g = {0} must be at least 2")]
    GenusTooSmall(u32),
    #[error("gcd(n, d) must be 1, got n = {n}, d = {d}")]
    NotCoprime { n: u32, d: i64 },
    #[error("parameters n = {n}, g = {g} overflow the supported range")]
    ParamsOverflow { n: u32, g: u32 },
    #[error("rank n = {0} is not a prime number; the closed formulas require prime n")]
    NotPrime(u32),
    #[error("evaluation outside the domain: {0}")]
    Domain(String),
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("half-integer exponent survived where an integral one is required: {0}")]
    ParityFailure(String),
    #[error("formula produced an impossible dimension: {0}")]
    InconsistentFormula(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("realized table fails its criterion: {0}")]
    CriterionFailure(String),
    #[error("search would enumerate {count} cases, above the budget of {budget}")]
    BudgetExceeded { count: String, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by bad user input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::RankTooSmall(_)
                | Error::GenusTooSmall(_)
                | Error::NotCoprime { .. }
                | Error::ParamsOverflow { .. }
                | Error::NotPrime(_)
                | Error::Domain(_)
                | Error::BudgetExceeded { .. }
                | Error::Parse(_)
        )
    }
}
