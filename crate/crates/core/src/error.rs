use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("budget of {budget} exceeded while {context}")]
    BudgetExceeded { budget: usize, context: String },

    #[error("unsupported field size q = {0} (odd primes up to 101 only)")]
    UnsupportedField(u64),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("element is not in the group: {0}")]
    ElementNotInGroup(String),

    #[error("subgroups are not rationally equivalent")]
    NotEquivalent,

    #[error("no unimodular certificate found (box bound {box_bound}, {samples} random samples); this does not prove inequivalence")]
    NotFoundWithinBudget { box_bound: i64, samples: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("action mismatch: {0}")]
    ActionMismatch(String),

    #[error("no invertible group-algebra lift found (solution space dimension {dimension})")]
    LiftFailed { dimension: usize },

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    #[error("group is not non-abelian simple: {0}")]
    NotSimple(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("map is not surjective: {0}")]
    NotSurjective(String),

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn budget(budget: usize, context: impl Into<String>) -> Self {
        Error::BudgetExceeded {
            budget,
            context: context.into(),
        }
    }
}
