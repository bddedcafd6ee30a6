use thiserror::Error;

use crate::kernel::{Ball, Mag};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive loop ran out of doublings before reaching the target radius.
    #[error("precision failure after reaching {bits} bits: radius {} exceeds target {}", best.rad().to_f64(), target.to_f64())]
    Precision { best: Ball, target: Mag, bits: u32 },

    /// A tail certificate never dropped below the requested bound within the term cap.
    #[error("series did not certify convergence within {terms} terms")]
    Convergence { best: Option<Ball>, terms: usize },

    /// Two independent algorithms produced disjoint balls.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// The best ball the failing computation produced, if any.
    pub fn best_ball(&self) -> Option<&Ball> {
        match self {
            Error::Precision { best, .. } => Some(best),
            Error::Convergence { best, .. } => best.as_ref(),
            _ => None,
        }
    }
}
