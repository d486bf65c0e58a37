use thiserror::Error;

/// Crate-wide error type. `kind()` yields the stable machine-readable tag
/// used by the CLI's `error:<kind>:` prefix.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: String, detail: String },

    #[error("invalid graph ({invariant}): {detail}")]
    Validation { invariant: String, detail: String },

    #[error("words are not composable: {0}")]
    NotComposable(String),

    #[error("source mismatch: {0}")]
    SourceMismatch(String),

    #[error("germ arguments outside domain: {0}")]
    DomainViolation(String),

    #[error("groupoid element does not act on this boundary point: {0}")]
    NotInDomain(String),

    #[error("tree ball too shallow: quotient needs depth >= 1")]
    BallTooShallow,

    #[error("operation requires {0}")]
    NonCyclicInfinite(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("zero patterns of the realized weight matrices disagree at ({0}, {1})")]
    ZeroPatternMismatch(usize, usize),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Validation { .. } => "validation",
            Error::NotComposable(_) => "not-composable",
            Error::SourceMismatch(_) => "source-mismatch",
            Error::DomainViolation(_) => "domain",
            Error::NotInDomain(_) => "not-in-domain",
            Error::BallTooShallow => "ball-too-shallow",
            Error::NonCyclicInfinite(_) => "non-cyclic-infinite",
            Error::SingularMatrix => "singular-matrix",
            Error::ZeroPatternMismatch(..) => "zero-pattern-mismatch",
        }
    }

    pub(crate) fn parse(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse { what: what.into(), detail: detail.into() }
    }

    pub(crate) fn validation(invariant: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Validation { invariant: invariant.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
