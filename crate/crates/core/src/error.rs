//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Vector/grid shapes do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A quadrature rule or covering could not be constructed.
    #[error("construction failed: {0}")]
    Construction(String),
    /// Adaptive refinement did not reach its accuracy target.
    #[error("accuracy target not reached: {0}")]
    Accuracy(String),
    /// The Luxemburg norm bisection found no finite bracket.
    #[error("unbounded norm: {0}")]
    UnboundedNorm(String),
    /// The operation is outside the supported parameter range.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
