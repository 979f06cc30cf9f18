//! Error types shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the metric and covering-map computations.
///
/// `Domain` means the input lies outside the mathematical domain of the
/// operation (a puncture, a point outside the disk, a parameter out of
/// range). `Numeric` means the input was admissible but an iterative
/// computation failed to reach its accuracy contract.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numeric error: {0}")]
    Numeric(String),
}

impl MetricError {
    pub fn domain(msg: impl Into<String>) -> Self {
        MetricError::Domain(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        MetricError::Numeric(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, MetricError>;
