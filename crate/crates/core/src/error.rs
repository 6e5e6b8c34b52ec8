use thiserror::Error;

/// Errors raised by the sieve machinery.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SieveError {
    /// A computation would exceed the configured work or memory cap.
    #[error("budget exceeded: {what} needs {requested}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Progression data with `gcd(k, l) != 1`.
    #[error("modulus {k} and residue {l} are not coprime")]
    NotCoprime { k: u64, l: u64 },

    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error("prime table too small: need values below {needed}, table limit is {limit}")]
    TableTooSmall { needed: u64, limit: u64 },

    /// A residue system with `|Omega(p)| >= p`, or a density with `omega(p) >= p`.
    #[error("density bound violated at p = {p}: {size} classes removed")]
    DensityBound { p: u64, size: u64 },

    #[error("incomplete problem parameters: missing `{0}`")]
    MissingParameter(&'static str),

    #[error("problem kind `{0}` has no interval-plus-residue form")]
    NoResidueForm(&'static str),

    /// An identity that must hold exactly did not.
    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    /// The delay-system table disagrees with its closed form on (2, 4].
    #[error("step {step} too coarse: closed-form mismatch {mismatch:e}")]
    StepTooCoarse { step: f64, mismatch: f64 },

    #[error("config error: {0}")]
    Config(String),
}

impl SieveError {
    pub fn is_budget(&self) -> bool {
        matches!(self, SieveError::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, SieveError>;

pub(crate) fn invalid(msg: impl Into<String>) -> SieveError {
    SieveError::InvalidArgument(msg.into())
}
