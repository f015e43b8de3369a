use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates its documented domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The gamma function was asked for a value at (or next to) one of its poles.
    #[error("gamma pole at x = {x}")]
    Pole { x: f64 },

    /// A series failed to meet its stopping rule before the term cap.
    #[error("series did not converge within {terms} terms (last term magnitude {last_term:e})")]
    NonConvergence { terms: usize, last_term: f64 },

    /// A quotient whose denominator vanished.
    #[error("division by (near) zero at z = {z}")]
    Division { z: Complex64 },

    /// Evaluation requested outside the punctured unit disk.
    #[error("z = {z} lies outside the punctured unit disk 0 < |z| < 1")]
    Domain { z: Complex64 },

    /// A value left the double-precision range.
    #[error("value overflowed at index {index}")]
    Overflow { index: usize },

    /// An internal consistency check of a series construction failed.
    #[error("singular construction: {0}")]
    Singular(String),

    /// Malformed coefficient or weight input.
    #[error("line {line}: {reason}")]
    Format { line: u64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
