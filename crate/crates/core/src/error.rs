use thiserror::Error;

/// Errors surfaced by the library. Each variant carries a stable
/// machine-readable code (see [`Error::code`]) used by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: &'static str, rank: usize },

    #[error("family has no diagram folding: {0}")]
    NotFolded(&'static str),

    #[error("operation requires a folded family: {0}")]
    NotNative(&'static str),

    #[error("weight is not dominant")]
    NonDominant,

    #[error("weight is not in the image of the ambient embedding")]
    OffWeightImage,

    #[error("element is not in the image of the virtualization map")]
    OffImage,

    #[error("invalid factor spec ({r},{s})")]
    InvalidFactor { r: usize, s: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid rigged configuration: {0}")]
    InvalidRc(String),

    #[error("node budget exceeded ({0} nodes)")]
    BudgetExceeded(usize),

    #[error("affine operators unavailable for this type (ambient D world)")]
    AffineUnavailable,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRank { .. } => "invalid-rank",
            Error::NotFolded(_) => "not-folded",
            Error::NotNative(_) => "not-native",
            Error::NonDominant => "non-dominant",
            Error::OffWeightImage => "off-weight-image",
            Error::OffImage => "off-image",
            Error::InvalidFactor { .. } => "invalid-factor",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::InvalidRc(_) => "invalid-rc",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::AffineUnavailable => "affine-unavailable",
            Error::Malformed(_) => "malformed",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
