use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("mode error: {0}")]
    Mode(String),
    #[error("letter {0} is out of range")]
    LetterOutOfRange(String),
    #[error("letter {0} is not admitted by this rule set")]
    UnsupportedLetter(String),
    #[error("bidegree is undefined for words containing u")]
    UnsupportedGrading,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("term budget exceeded: more than {cap} terms")]
    TermBudget { cap: usize },
    #[error("rewrite step bound {bound} exceeded for a word of length {len}")]
    StepBound { len: usize, bound: usize },
    #[error("Fock dimension {dim} exceeds the cap {cap}")]
    DimensionGuard { dim: usize, cap: usize },
    #[error("safe subspace is empty: words of peak degree {peak} do not fit in truncation {depth}")]
    DegenerateSafeSubspace { peak: usize, depth: usize },
    #[error("series budget exceeded: {terms} terms at K = {k} (cap {cap})")]
    SeriesBudget { k: usize, terms: usize, cap: usize },
    #[error("combinatorial budget exceeded: {0}")]
    CombinatorialBudget(String),
    #[error("component of bidegree {expected:?} contains a monomial of bidegree {found:?}")]
    Inhomogeneous { expected: (i64, i64), found: (i64, i64) },
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

impl Error {
    /// Name of the guard that fired, for errors that are resource or validity guards.
    pub fn guard_name(&self) -> Option<&'static str> {
        match self {
            Error::TermBudget { .. } => Some("term-budget"),
            Error::StepBound { .. } => Some("step-bound"),
            Error::DimensionGuard { .. } => Some("dimension-cap"),
            Error::DegenerateSafeSubspace { .. } => Some("safe-subspace"),
            Error::SeriesBudget { .. } => Some("series-budget"),
            Error::CombinatorialBudget(_) => Some("combinatorial-budget"),
            Error::Inhomogeneous { .. } => Some("homogeneity"),
            Error::IdentityFailed(_) => Some("identity-precondition"),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
