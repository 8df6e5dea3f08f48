use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two groups: precondition violations (bad input) and
/// resource caps (a search limit was hit). [`Error::is_resource_cap`] tells
/// them apart; the CLI maps them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial is reducible: rational root {0}")]
    Reducible(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("constant polynomial")]
    ConstantPolynomial,

    #[error("polynomial vanishes modulo {0}")]
    VanishesModP(u64),

    #[error("zero element")]
    ZeroElement,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ambiguous embedding: {0}")]
    AmbiguousEmbedding(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("prime scan reached cap {cap} without finding a torsion-free level")]
    ScanLimit { cap: u64 },

    #[error("threshold search overflowed 2^64")]
    Overflow,

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("no admissible shift with denominator at most {0}")]
    NoFeasibleShift(u64),

    #[error("search space too large: {0} candidates (limit 2^30)")]
    SearchSpace(u128),
}

impl Error {
    /// True for errors caused by a configurable search limit rather than by
    /// invalid input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::ScanLimit { .. }
                | Error::Overflow
                | Error::CapExceeded(_)
                | Error::NoFeasibleShift(_)
                | Error::SearchSpace(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
