use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("code dimension {k} exceeds the enumeration limit of {limit}")]
    EnumerationTooLarge { k: usize, limit: usize },

    /// The per-bit failure probability has reached the decision margin, so no
    /// finite number of repetitions gives the requested confidence.
    #[error("non-convergent regime: failure probability {p_fail} >= margin {margin}")]
    NonConvergent { p_fail: f64, margin: f64 },

    #[error("no positive threshold: failure probability {lhs_at_zero} at p = 0 already exceeds margin {margin}")]
    NoPositiveThreshold { lhs_at_zero: f64, margin: f64 },

    #[error("state has zero overlap with logical |{0}>")]
    ZeroOverlap(u8),

    #[error("inconsistent dual size: {0}")]
    InconsistentDual(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
