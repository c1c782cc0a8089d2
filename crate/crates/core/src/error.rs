use thiserror::Error;

/// Errors raised by the group engine and everything layered on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The group is larger than the enumeration cap. `order` is exact for
    /// structured specs and a lower bound (`cap + 1`) for permutation specs.
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderExceedsCap { order: u64, cap: u64 },

    #[error("malformed group spec: {0}")]
    MalformedSpec(String),

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("no Hall subgroup for primes {primes:?} found (order {target} expected)")]
    NotFound { primes: Vec<u64>, target: u64 },

    #[error("subgroup of order {order} is not a {p}-group")]
    NotAPGroup { order: u64, p: u64 },

    #[error("the {p}'-elements of [G, P] do not form a subgroup")]
    NoNormalComplement { p: u64 },

    #[error("neither orientation of the two components matches a case signature")]
    OrientationConflict,

    #[error("no conjugate of the Sylow {r}-subgroup normalizes the beta Hall subgroup")]
    ConjugateSearchExhausted { r: u64 },

    #[error("graph is not realizable: {0}")]
    NotRealizable(String),

    #[error("prime search exceeded the trial bound {0}")]
    SearchBudgetExceeded(u64),

    #[error("invalid realization plan: {0}")]
    InvalidPlan(String),

    #[error("no catalog witness for label {0:?}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
